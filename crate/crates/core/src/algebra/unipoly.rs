//! Dense univariate polynomials over Q, cyclotomic polynomials and
//! cyclotomic peeling.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::poly::MultiPoly;
use super::rational::{self, Rational};
use crate::error::Error;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| rational::q(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    /// `t - a`.
    pub fn linear(a: &Rational) -> Self {
        UniPoly(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        UniPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let ld = d.lc();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &ld;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::q(i as i64))
                .collect(),
        )
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = r0.lc();
        if l.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / l;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<Rational>) -> Matrix<Rational> {
        let n = m.rows();
        let mut acc = Matrix::<Rational>::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Rational roots with multiplicity, found by the rational root test on
    /// the integer-scaled polynomial.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        let mut p = self.clone();
        let mut out = Vec::new();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        // Zero root first.
        let mut zero_mult = 0;
        while p.0.first().is_some_and(Zero::is_zero) {
            p = UniPoly::new(p.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        let ints = integer_coeffs(&p);
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let cands_num = divisors(&a0);
        let cands_den = divisors(&an);
        let mut cands: Vec<Rational> = Vec::new();
        for n in &cands_num {
            for d in &cands_den {
                for s in [1, -1] {
                    let r = Rational::new(n * BigInt::from(s), d.clone());
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        cands.sort();
        for r in cands {
            let lin = UniPoly::linear(&r);
            let mut mult = 0;
            while p.degree().unwrap_or(0) > 0 {
                match p.div_exact(&lin) {
                    Some(q) => {
                        p = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out
    }

    pub fn to_multipoly(&self, var: usize) -> MultiPoly {
        MultiPoly::from_terms(self.0.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0u32; var + 1];
            e[var] = k as u32;
            (c.clone(), e)
        }))
    }

    /// Reads a polynomial that involves at most one variable.
    pub fn from_multipoly(p: &MultiPoly) -> Result<(Self, usize), Error> {
        let vars: Vec<usize> = (0..p.num_vars_used()).filter(|&i| p.involves(i)).collect();
        if vars.len() > 1 {
            return Err(Error::Invalid("polynomial is not univariate".into()));
        }
        let v = vars.first().copied().unwrap_or(0);
        let deg = p.degree_in(v).unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, a) in p.terms() {
            c[m.exp(v) as usize] = a.clone();
        }
        Ok((UniPoly::new(c), v))
    }
}

fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let den = rational::denominator_lcm(p.0.iter());
    p.0.iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `d`-th cyclotomic polynomial, via `t^d - 1 = Π_{e | d} Φ_e`.
pub fn cyclotomic(d: u64) -> UniPoly {
    assert!(d >= 1);
    let mut c = vec![Rational::zero(); d as usize + 1];
    c[0] = -Rational::one();
    c[d as usize] = Rational::one();
    let mut p = UniPoly::new(c);
    for e in 1..d {
        if d % e == 0 {
            p = p.div_exact(&cyclotomic(e)).expect("Φ_e divides t^d - 1");
        }
    }
    p
}

/// Result of peeling cyclotomic factors off a univariate polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclotomicSplit {
    /// `(order d, multiplicity)` for each `Φ_d` found, in increasing order.
    pub factors: Vec<(u64, u32)>,
    /// What remains after removing every `Φ_d^mult` (keeps the leading coefficient).
    pub remainder: UniPoly,
}

/// Peels `Φ_d` for all `d` with `φ(d) ≤ deg p` and `d ≤ 2 deg(p)^2`.
pub fn cyclotomic_split_uni(p: &UniPoly) -> CyclotomicSplit {
    let deg = p.degree().unwrap_or(0) as u64;
    let bound = 2 * deg * deg;
    let mut rem = p.clone();
    let mut factors = Vec::new();
    for d in 1..=bound.max(1) {
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic(d);
        let mut mult = 0;
        while rem.degree().unwrap_or(0) >= phi.degree().unwrap() {
            match rem.div_exact(&phi) {
                Some(q) => {
                    rem = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            factors.push((d, mult));
        }
    }
    CyclotomicSplit { factors, remainder: rem }
}

/// Cyclotomic peeling for a univariate polynomial given as a [`MultiPoly`].
/// The remainder is returned in the same variable.
pub fn cyclotomic_split(p: &MultiPoly) -> Result<(Vec<(u64, u32)>, MultiPoly), Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (u, v) = UniPoly::from_multipoly(p)?;
    let s = cyclotomic_split_uni(&u);
    Ok((s.factors, s.remainder.to_multipoly(v)))
}

/// Characteristic polynomial `det(t I - M)` by Faddeev–LeVerrier.
pub fn char_poly(m: &Matrix<Rational>) -> UniPoly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    let id = Matrix::<Rational>::identity(n);
    for k in 1..=n {
        mk = m.mul(&mk.add(&id.scale(&coeffs[n - k + 1])));
        let c = -mk.trace() / rational::q(k as i64);
        coeffs[n - k] = c;
    }
    UniPoly::new(coeffs)
}

/// Minimal polynomial found by linear dependence among powers of `m`.
pub fn min_poly(m: &Matrix<Rational>) -> UniPoly {
    let n = m.rows();
    let mut powers = vec![Matrix::<Rational>::identity(n)];
    loop {
        let k = powers.len();
        let next = powers.last().unwrap().mul(m);
        // Solve next = Σ c_i powers[i].
        let a = Matrix::from_fn(n * n, k, |r, c| powers[c][(r / n, r % n)].clone());
        let b: Vec<Rational> = (0..n * n).map(|r| next[(r / n, r % n)].clone()).collect();
        if let Some(sol) = a.solve(&b) {
            let mut c: Vec<Rational> = sol.into_iter().map(|v| -v).collect();
            c.push(Rational::one());
            return UniPoly::new(c);
        }
        powers.push(next);
    }
}

impl From<&UniPoly> for MultiPoly {
    fn from(u: &UniPoly) -> Self {
        u.to_multipoly(0)
    }
}

impl UniPoly {
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        UniPoly(c)
    }
}
