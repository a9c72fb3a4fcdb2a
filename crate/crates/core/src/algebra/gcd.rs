//! Multivariate gcd by recursive subresultant remainder sequences, plus
//! squarefree parts.

use num_traits::One;

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::Error;

/// Normalized gcd: integer coefficients, content one, positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    gcd_from(f, g, 0).normalized()
}

/// Gcd of a list of polynomials.
pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for p in it {
        acc = gcd(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

/// Gcd over Q[x_k, x_{k+1}, ...]; both inputs must not involve variables below `k`.
fn gcd_from(f: &MultiPoly, g: &MultiPoly, k: usize) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let nvars = f.num_vars_used().max(g.num_vars_used());
    let Some(v) = (k..nvars).find(|&i| f.involves(i) || g.involves(i)) else {
        return MultiPoly::from_int(1);
    };
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let cont_f = content(&fc, v + 1);
    let cont_g = content(&gc, v + 1);
    let c = gcd_from(&cont_f, &cont_g, v + 1);
    let pf: Vec<MultiPoly> = fc.iter().map(|a| exact(a, &cont_f)).collect();
    let pg: Vec<MultiPoly> = gc.iter().map(|a| exact(a, &cont_g)).collect();
    let h = subresultant_last(pf, pg);
    let hc = content(&h, v + 1);
    let pp: Vec<MultiPoly> = h.iter().map(|a| exact(a, &hc)).collect();
    MultiPoly::from_coefficients(v, &pp).mul(&c)
}

fn exact(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.div_exact(b).expect("content divides every coefficient")
}

fn content(coeffs: &[MultiPoly], k: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in coeffs {
        acc = gcd_from(&acc, c, k);
        if acc.is_constant() && !acc.is_zero() {
            return MultiPoly::from_int(1);
        }
    }
    // Keep the content monic-ish so repeated normalization does not drift.
    let lc = acc.leading_coeff();
    acc.scale(&(Rational::one() / lc))
}

fn trim(p: &mut Vec<MultiPoly>) {
    while p.last().is_some_and(MultiPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &[MultiPoly]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = deg(b);
    let mut steps = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bi.mul(&lr));
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = pow(&lb, steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn pow(p: &MultiPoly, e: u32) -> MultiPoly {
    (0..e).fold(MultiPoly::from_int(1), |acc, _| acc.mul(p))
}

/// Last nonzero element of the subresultant sequence of two primitive
/// univariate polynomials (coefficients in the remaining variables).
fn subresultant_last(mut a: Vec<MultiPoly>, mut b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MultiPoly::from_int(1);
    let mut h = MultiPoly::from_int(1);
    loop {
        if b.is_empty() {
            return a;
        }
        let d = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MultiPoly::from_int(1)];
        }
        let beta = g.mul(&pow(&h, d));
        a = b;
        b = r.iter().map(|c| exact(c, &beta)).collect();
        g = a.last().unwrap().clone();
        h = if d == 0 {
            h
        } else {
            let num = pow(&g, d);
            exact(&num, &pow(&h, d - 1))
        };
    }
}

/// Squarefree part `f / gcd(f, ∂f/∂x_1, ..., ∂f/∂x_n)`, normalized, and
/// whether `f` was already reduced.
pub fn squarefree_part(f: &MultiPoly) -> Result<(MultiPoly, bool), Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let partials: Vec<MultiPoly> = (0..f.num_vars_used()).map(|i| f.derivative(i)).collect();
    let mut g = f.normalized();
    for p in &partials {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, p);
    }
    let part = f.div_exact(&g).expect("gcd divides f").normalized();
    let reduced = f.constant_multiple_of(&part).is_some();
    Ok((part, reduced))
}
