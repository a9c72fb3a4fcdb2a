//! Univariate Laurent polynomials over Q.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::ring::{ExactDiv, Ring};
use super::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

/// Square matrix of Laurent polynomials in `z`.
pub type LaurentMatrix = Matrix<LaurentPoly>;

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(e, c);
        p
    }

    /// `z^e`.
    pub fn z(e: i64) -> Self {
        LaurentPoly::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// If `self = c z^k` with `c ≠ 0`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    /// Is every exponent `≥ 0`?
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Is every exponent `≤ 0`?
    pub fn is_polynomial_in_inverse(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    /// Substitutes `z ↦ z^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(z.clone(), *e as usize)
            } else {
                num_traits::pow(Rational::one() / z, (-*e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    fn to_uni(&self) -> (UniPoly, i64) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, a) in &self.terms {
            c[(e - lo) as usize] = a.clone();
        }
        (UniPoly::new(c), lo)
    }

    fn from_uni(u: &UniPoly, shift: i64) -> Self {
        LaurentPoly::from_terms(u.coeffs().iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())))
    }
}

impl Ring for LaurentPoly {
    fn zero_elem() -> Self {
        LaurentPoly::default()
    }
    fn one_elem() -> Self {
        LaurentPoly::z(0)
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
        let mut p = LaurentPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
    fn negated(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn from_rational(r: &Rational) -> Self {
        LaurentPoly::constant(r.clone())
    }
}

impl ExactDiv for LaurentPoly {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (a, sa) = self.to_uni();
        let (b, sb) = o.to_uni();
        let q = a.div_exact(&b)?;
        Some(LaurentPoly::from_uni(&q, sa - sb))
    }
}
