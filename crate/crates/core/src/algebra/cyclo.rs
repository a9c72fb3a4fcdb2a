//! The cyclotomic field Q(ζ_m) as the quotient ring Q[t]/Φ_m.

use std::sync::Arc;

use num_traits::Zero;

use super::rational::Rational;
use super::ring::{ExactDiv, Field, Ring};
use super::unipoly::{cyclotomic, UniPoly};

/// Modulus data for Q[t]/Φ_m.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    pub order: u64,
    pub modulus: UniPoly,
}

impl CycloField {
    pub fn new(order: u64) -> Arc<Self> {
        Arc::new(CycloField { order, modulus: cyclotomic(order) })
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> CycloElem {
        CycloElem::reduce(Some(self.clone()), UniPoly::new(vec![c]))
    }

    /// The class of `t^k`, a primitive root of unity raised to `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: u64) -> CycloElem {
        let k = k % self.order.max(1);
        CycloElem::reduce(Some(self.clone()), UniPoly::monomial(k as usize))
    }
}

/// Element of Q[t]/Φ_m. Elements built by `Ring::zero`/`Ring::one` carry no
/// modulus and act as rational constants in any field.
#[derive(Clone, Debug)]
pub struct CycloElem {
    field: Option<Arc<CycloField>>,
    rep: UniPoly,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl CycloElem {
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn reduce(field: Option<Arc<CycloField>>, p: UniPoly) -> Self {
        let rep = match &field {
            Some(f) => p.rem(&f.modulus),
            None => p,
        };
        CycloElem { field, rep }
    }

    /// Representative of degree below φ(m).
    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }

    fn join(&self, o: &Self) -> Option<Arc<CycloField>> {
        match (&self.field, &o.field) {
            (Some(a), Some(b)) => {
                assert_eq!(a.order, b.order, "mixing cyclotomic fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl Ring for CycloElem {
    fn zero_elem() -> Self {
        CycloElem { field: None, rep: UniPoly::zero() }
    }
    fn one_elem() -> Self {
        CycloElem { field: None, rep: UniPoly::one() }
    }
    fn is_zero_elem(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        CycloElem { field: self.join(o), rep: self.rep.add(&o.rep) }
    }
    fn minus(&self, o: &Self) -> Self {
        CycloElem { field: self.join(o), rep: self.rep.sub(&o.rep) }
    }
    fn times(&self, o: &Self) -> Self {
        CycloElem::reduce(self.join(o), self.rep.mul(&o.rep))
    }
    fn negated(&self) -> Self {
        CycloElem { field: self.field.clone(), rep: self.rep.scale(&-Rational::from_integer(1.into())) }
    }
    fn from_rational(r: &Rational) -> Self {
        CycloElem { field: None, rep: UniPoly::new(vec![r.clone()]) }
    }
}

impl ExactDiv for CycloElem {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.times(&i))
    }
}

impl Field for CycloElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.field {
            None => {
                let c = self.as_rational()?;
                Some(CycloElem::from_rational(&(Rational::from_integer(1.into()) / c)))
            }
            Some(f) => {
                let (g, s, _) = self.rep.xgcd(&f.modulus);
                (g == UniPoly::one()).then(|| CycloElem::reduce(Some(f.clone()), s))
            }
        }
    }
}
