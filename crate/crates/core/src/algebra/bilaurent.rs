//! Laurent polynomials in two variables `x, y`, for chart data on the
//! punctured plane.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::matrix::Matrix;
use super::poly::MultiPoly;
use super::rational::{self, Rational};
use super::ring::{ExactDiv, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), Rational>,
}

pub type BiLaurentMatrix = Matrix<BiLaurent>;

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(c: Rational, a: i64, b: i64) -> Self {
        let mut p = BiLaurent::default();
        p.add_term((a, b), c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        BiLaurent::monomial(c, 0, 0)
    }

    /// `x^a y^b`.
    pub fn xy(a: i64, b: i64) -> Self {
        BiLaurent::monomial(Rational::one(), a, b)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64), Rational)>) -> Self {
        let mut p = BiLaurent::default();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (i64, i64), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Embeds a polynomial in the first two variables.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.num_vars_used() > 2 {
            return Err(Error::DimensionMismatch("expected a polynomial in x, y".into()));
        }
        Ok(BiLaurent::from_terms(p.terms().map(|(m, c)| ((m.exp(0) as i64, m.exp(1) as i64), c.clone()))))
    }

    /// The polynomial, if no exponent is negative.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.terms
            .iter()
            .map(|((a, b), c)| Some((c.clone(), vec![u32::try_from(*a).ok()?, u32::try_from(*b).ok()?])))
            .collect::<Option<Vec<_>>>()
            .map(MultiPoly::from_terms)
    }

    /// Lies in `Q[x^±, y]`.
    pub fn regular_where_x_invertible(&self) -> bool {
        self.terms.keys().all(|(_, b)| *b >= 0)
    }

    /// Lies in `Q[x, y^±]`.
    pub fn regular_where_y_invertible(&self) -> bool {
        self.terms.keys().all(|(a, _)| *a >= 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiLaurent::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn derivative(&self, var: usize) -> Self {
        BiLaurent::from_terms(self.terms.iter().map(|(&(a, b), c)| {
            if var == 0 {
                ((a - 1, b), c * rational::q(a))
            } else {
                ((a, b - 1), c * rational::q(b))
            }
        }))
    }

    /// `Σ a_i ∂_i` applied, with polynomial coefficients in `x, y`.
    pub fn apply_field(&self, coeffs: &[MultiPoly]) -> Result<Self> {
        let mut acc = BiLaurent::zero();
        for (i, a) in coeffs.iter().enumerate().take(2) {
            if !a.is_zero() {
                acc = acc.plus(&BiLaurent::from_poly(a)?.times(&self.derivative(i)));
            }
        }
        Ok(acc)
    }

    /// The common weight `p a + q b` of all terms; `None` if the terms
    /// have different weights, `Some(None)` for zero.
    pub fn weighted_degree(&self, p: i64, q: i64) -> Option<Option<i64>> {
        let mut w = None;
        for (a, b) in self.terms.keys() {
            let d = p * a + q * b;
            match w {
                None => w = Some(d),
                Some(v) if v != d => return None,
                _ => {}
            }
        }
        Some(w)
    }

    /// `(c, a, b)` if this is the single term `c x^a y^b`.
    pub fn as_monomial(&self) -> Option<(Rational, i64, i64)> {
        if self.terms.len() == 1 {
            let ((a, b), c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *a, *b))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let pw = |v: &Rational, e: i64| {
            if e >= 0 {
                num_traits::pow(v.clone(), e as usize)
            } else {
                num_traits::pow(Rational::one() / v, (-e) as usize)
            }
        };
        self.terms.iter().map(|((a, b), c)| c * pw(x, *a) * pw(y, *b)).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|((a, b), c)| json!({"c": rational::to_text(c), "e": [a, b]})).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(s) = v.as_str() {
            return Ok(BiLaurent::constant(rational::parse(s)?));
        }
        if let Some(i) = v.as_i64() {
            return Ok(BiLaurent::constant(rational::q(i)));
        }
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected a term array".into()))?;
        let mut p = BiLaurent::zero();
        for t in arr {
            let c = match t.get("c") {
                Some(Value::String(s)) => rational::parse(s)?,
                Some(c) => rational::q(c.as_i64().ok_or_else(|| Error::Parse("bad coefficient".into()))?),
                None => return Err(Error::Parse("term without \"c\"".into())),
            };
            let e = t.get("e").and_then(Value::as_array).ok_or_else(|| Error::Parse("term without \"e\"".into()))?;
            let ex = |i: usize| e.get(i).map_or(Some(0), Value::as_i64).ok_or_else(|| Error::Parse("bad exponent".into()));
            if e.len() > 2 {
                return Err(Error::Parse("expected two exponents".into()));
            }
            p.add_term((ex(0)?, ex(1)?), c);
        }
        Ok(p)
    }
}

impl Ring for BiLaurent {
    fn zero_elem() -> Self {
        BiLaurent::default()
    }
    fn one_elem() -> Self {
        BiLaurent::xy(0, 0)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut p = BiLaurent::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                p.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        p
    }
    fn negated(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn from_rational(r: &Rational) -> Self {
        BiLaurent::constant(r.clone())
    }
}

impl ExactDiv for BiLaurent {
    /// Exact division by a single term only.
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (c, a, b) = o.as_monomial()?;
        Some(BiLaurent::from_terms(self.terms.iter().map(|(&(x, y), v)| ((x - a, y - b), v / &c))))
    }
}

/// Inverse of a matrix whose determinant is a single term, by adjugate.
pub fn unit_inverse(m: &BiLaurentMatrix) -> Option<BiLaurentMatrix> {
    let n = m.rows();
    let det = m.det_cofactor();
    det.as_monomial()?;
    if n == 1 {
        return Some(Matrix::from_rows(vec![vec![BiLaurent::one_elem().div_exact(&det)?]]));
    }
    let mut out = Matrix::<BiLaurent>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = m.minor(j, i).det_cofactor();
            let c = if (i + j) % 2 == 0 { c } else { c.negated() };
            out[(i, j)] = c.div_exact(&det)?;
        }
    }
    Some(out)
}

pub fn matrix_to_json(m: &BiLaurentMatrix) -> Value {
    crate::json::matrix_to_json(m, BiLaurent::to_json)
}

pub fn matrix_from_json(v: &Value) -> Result<BiLaurentMatrix> {
    crate::json::matrix_from_json(v, BiLaurent::from_json)
}
