//! Equivariant splitting on the football `P_{p,q}`.
//!
//! An equivariant transition carries a residue mod `p` for each row (the
//! isotropy character at the chart with `Z/p` isotropy) and a residue mod
//! `q` for each column. Every exponent `e` of entry `(i, j)` satisfies
//! `e ≡ a_i (mod p)` and `e ≡ b_j (mod q)`. Row operations that keep this
//! structure only combine rows whose lowest exponents agree mod `q`.

use num_integer::Integer;
use serde_json::{json, Value};

use super::{finish, reduce_rows, Factorization, SplittingType, Transition};
use crate::error::{Error, Result};
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantTransition {
    pub transition: Transition,
    pub p: i64,
    pub q: i64,
    /// Residue mod `p` per row.
    pub isotropy0: Vec<i64>,
    /// Residue mod `q` per column.
    pub isotropy_inf: Vec<i64>,
}

impl EquivariantTransition {
    pub fn new(transition: Transition, p: i64, q: i64, isotropy0: Vec<i64>, isotropy_inf: Vec<i64>) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::Invalid("weights p, q must be positive".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::Invalid(format!("weights ({p}, {q}) are not coprime")));
        }
        let m = transition.rank();
        if isotropy0.len() != m || isotropy_inf.len() != m {
            return Err(Error::DimensionMismatch(format!("need {m} isotropy residues per chart")));
        }
        let t = transition.matrix();
        for i in 0..m {
            for j in 0..m {
                for (e, _) in t[(i, j)].terms() {
                    if (e - isotropy0[i]).rem_euclid(p) != 0 {
                        return Err(Error::Equivariance {
                            row: i,
                            col: j,
                            detail: format!("exponent {e} is not {} mod {p}", isotropy0[i].rem_euclid(p)),
                        });
                    }
                    if (e - isotropy_inf[j]).rem_euclid(q) != 0 {
                        return Err(Error::Equivariance {
                            row: i,
                            col: j,
                            detail: format!("exponent {e} is not {} mod {q}", isotropy_inf[j].rem_euclid(q)),
                        });
                    }
                }
            }
        }
        Ok(EquivariantTransition { transition, p, q, isotropy0, isotropy_inf })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing \"{k}\"")));
        let p = get("p")?.as_i64().ok_or_else(|| Error::Parse("\"p\" must be an integer".into()))?;
        let q = get("q")?.as_i64().ok_or_else(|| Error::Parse("\"q\" must be an integer".into()))?;
        let t = Transition::new(json::laurent_matrix_from_json(get("T")?)?)?;
        EquivariantTransition::new(t, p, q, json::int_list(get("isotropy0")?)?, json::int_list(get("isotropyInf")?)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "isotropy0": self.isotropy0,
            "isotropyInf": self.isotropy_inf,
            "T": self.transition.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FootballSplitting {
    /// Classes as multiples of `O(1)`, sorted descending.
    pub classes: Vec<i64>,
    pub factorization: Factorization,
}

fn sorted_mod(v: impl Iterator<Item = i64>, n: i64) -> Vec<i64> {
    let mut out: Vec<i64> = v.map(|x| x.rem_euclid(n)).collect();
    out.sort_unstable();
    out
}

/// Equivariant splitting into powers of `O(1)`. The reduction only uses
/// row operations that respect the isotropy residues, so the factors are
/// themselves equivariant.
pub fn football_split(et: &EquivariantTransition) -> Result<FootballSplitting> {
    let q = et.q;
    let (pminus, l, b) = reduce_rows(et.transition.matrix(), |_, li| li.rem_euclid(q));
    let factorization = finish(pminus, l, b);
    let classes = factorization.exponents.clone();
    // Consistency with the isotropy data.
    debug_assert_eq!(sorted_mod(classes.iter().copied(), et.p), sorted_mod(et.isotropy0.iter().copied(), et.p));
    debug_assert_eq!(sorted_mod(classes.iter().copied(), q), sorted_mod(et.isotropy_inf.iter().copied(), q));
    Ok(FootballSplitting { classes, factorization })
}

impl FootballSplitting {
    pub fn splitting_type(&self) -> SplittingType {
        SplittingType::new(self.classes.clone())
    }

    /// Classes reduced mod `p` and mod `q` reproduce the isotropy data.
    pub fn consistent_with(&self, et: &EquivariantTransition) -> bool {
        sorted_mod(self.classes.iter().copied(), et.p) == sorted_mod(et.isotropy0.iter().copied(), et.p)
            && sorted_mod(self.classes.iter().copied(), et.q) == sorted_mod(et.isotropy_inf.iter().copied(), et.q)
    }
}
