//! Birkhoff factorization of Laurent transition matrices, Grothendieck
//! splitting types on the projective line and on football orbifolds, and
//! the extension of equivariant logarithmic connections across the origin.
//!
//! Convention: a bundle is glued from row-vector sections by
//! `s_0 = s_∞ T`, so the transition `z^n` presents `O(n)`, and
//! `T = P⁻ · diag(z^{n_i}) · P⁺` with `P⁺` polynomial in `z` and `P⁻`
//! polynomial in `z⁻¹`, both of constant nonzero determinant.

pub mod extend;
pub mod football;
pub mod oracle;

use num_traits::Zero;
use serde_json::Value;

use crate::algebra::rational::Rational;
use crate::algebra::{LaurentMatrix, LaurentPoly, Matrix};
use crate::error::{Error, Result};
use crate::json;

pub use extend::{extend_connection, ChartData, ConnectionData, ExtendedConnection};
pub use football::{football_split, EquivariantTransition};
pub use oracle::{h0, splitting_type_rank_oracle};

/// A square Laurent matrix whose determinant is a unit `c z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    t: LaurentMatrix,
    det_coeff: Rational,
    det_exp: i64,
}

impl Transition {
    pub fn new(t: LaurentMatrix) -> Result<Self> {
        if !t.is_square() || t.rows() == 0 {
            return Err(Error::DimensionMismatch("transition must be a nonempty square matrix".into()));
        }
        let d = t.det();
        let Some((det_coeff, det_exp)) = d.as_monomial() else {
            let terms = d.terms().count();
            return Err(Error::NonUnitDeterminant(format!("determinant has {terms} terms")));
        };
        Ok(Transition { t, det_coeff, det_exp })
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.t.rows()
    }

    /// `k` in `det T = c z^k`.
    pub fn det_exponent(&self) -> i64 {
        self.det_exp
    }

    pub fn det_coefficient(&self) -> &Rational {
        &self.det_coeff
    }

    /// Smallest exponent occurring in `T`.
    pub fn min_exponent(&self) -> i64 {
        self.t.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0)
    }

    pub fn max_exponent(&self) -> i64 {
        self.t.iter().filter_map(LaurentPoly::max_exp).max().unwrap_or(0)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v.get("T").unwrap_or(v);
        Transition::new(json::laurent_matrix_from_json(m)?)
    }

    pub fn to_json(&self) -> Value {
        json::laurent_matrix_to_json(&self.t)
    }
}

/// `n_1 ≥ … ≥ n_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(pub Vec<i64>);

impl SplittingType {
    pub fn new(mut v: Vec<i64>) -> Self {
        v.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub pminus: LaurentMatrix,
    /// Exponents of `D`, sorted descending.
    pub exponents: Vec<i64>,
    pub pplus: LaurentMatrix,
}

impl Factorization {
    pub fn d(&self) -> LaurentMatrix {
        Matrix::diagonal(self.exponents.iter().map(|&e| LaurentPoly::z(e)).collect())
    }

    pub fn splitting_type(&self) -> SplittingType {
        SplittingType::new(self.exponents.clone())
    }

    pub fn product(&self) -> LaurentMatrix {
        self.pminus.mul(&self.d()).mul(&self.pplus)
    }

    /// The factor shapes required of a Birkhoff factorization.
    pub fn factors_are_valid(&self) -> bool {
        let unit_const = |m: &LaurentMatrix| m.det().as_monomial().is_some_and(|(_, k)| k == 0);
        self.pminus.iter().all(LaurentPoly::is_polynomial_in_inverse)
            && self.pplus.iter().all(LaurentPoly::is_polynomial)
            && unit_const(&self.pminus)
            && unit_const(&self.pplus)
            && self.exponents.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Lowest exponent of every row and the matrix of lowest coefficients.
fn lowest(b: &LaurentMatrix) -> (Vec<i64>, Matrix<Rational>) {
    let l: Vec<i64> = (0..b.rows())
        .map(|i| b.row(i).iter().filter_map(LaurentPoly::min_exp).min().expect("rows of a unit matrix are nonzero"))
        .collect();
    let lc = Matrix::from_fn(b.rows(), b.cols(), |i, j| b[(i, j)].coeff(l[i]));
    (l, lc)
}

/// Row reduction shared by the plain and the equivariant splitting. Rows
/// are combined only within a group of equal `group(l_i)`; returns
/// `(P⁻, l, B)` with `T = P⁻ B` and `B`'s lowest-coefficient matrix
/// invertible.
pub(crate) fn reduce_rows(
    t: &LaurentMatrix,
    group: impl Fn(usize, i64) -> i64,
) -> (LaurentMatrix, Vec<i64>, LaurentMatrix) {
    let m = t.rows();
    let mut b = t.clone();
    let mut pminus = LaurentMatrix::identity(m);
    loop {
        let (l, lc) = lowest(&b);
        if !lc.det().is_zero() {
            return (pminus, l, b);
        }
        let mut keys: Vec<i64> = (0..m).map(|i| group(i, l[i])).collect();
        keys.sort_unstable();
        keys.dedup();
        let dep = keys.iter().find_map(|&key| {
            let rows: Vec<usize> = (0..m).filter(|&i| group(i, l[i]) == key).collect();
            let sub = Matrix::from_fn(m, rows.len(), |c, r| lc[(rows[r], c)].clone());
            sub.kernel().into_iter().next().map(|k| (rows, k))
        });
        let (rows, c) = dep.expect("a singular lowest-coefficient matrix has a dependency within one group");
        let i0_pos = (0..rows.len())
            .filter(|&r| !c[r].is_zero())
            .min_by_key(|&r| (l[rows[r]], rows[r]))
            .unwrap();
        let i0 = rows[i0_pos];
        let mut nmat = LaurentMatrix::zeros(m, m);
        for (r, &i) in rows.iter().enumerate() {
            if i == i0 || c[r].is_zero() {
                continue;
            }
            nmat[(i0, i)] = LaurentPoly::monomial(&c[r] / &c[i0_pos], l[i0] - l[i]);
        }
        let e = LaurentMatrix::identity(m).add(&nmat);
        b = e.mul(&b);
        pminus = pminus.mul(&LaurentMatrix::identity(m).sub(&nmat));
    }
}

/// Sorts the result of [`reduce_rows`] and splits off `D`.
pub(crate) fn finish(pminus: LaurentMatrix, l: Vec<i64>, b: LaurentMatrix) -> Factorization {
    let m = l.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| l[j].cmp(&l[i]).then(i.cmp(&j)));
    let exponents: Vec<i64> = order.iter().map(|&i| l[i]).collect();
    let pminus = Matrix::from_fn(m, m, |r, c| pminus[(r, order[c])].clone());
    let pplus = Matrix::from_fn(m, m, |r, c| b[(order[r], c)].shift(-exponents[r]));
    Factorization { pminus, exponents, pplus }
}

/// `T = P⁻ D P⁺` by repeated cancellation of lowest-order terms. Each step
/// strictly raises `Σ l_i`, which is bounded by the determinant exponent.
pub fn birkhoff_factorize(t: &Transition) -> Factorization {
    let (pminus, l, b) = reduce_rows(&t.t, |_, _| 0);
    finish(pminus, l, b)
}

pub fn factorization_to_json(f: &Factorization) -> Value {
    serde_json::json!({
        "Pminus": json::laurent_matrix_to_json(&f.pminus),
        "D": f.exponents,
        "Pplus": json::laurent_matrix_to_json(&f.pplus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn lm(rows: Vec<Vec<LaurentPoly>>) -> LaurentMatrix {
        Matrix::from_rows(rows)
    }

    fn z(e: i64) -> LaurentPoly {
        LaurentPoly::z(e)
    }

    fn zero() -> LaurentPoly {
        LaurentPoly::zero()
    }

    #[test]
    fn diagonal() {
        let t = Transition::new(lm(vec![vec![z(2), zero()], vec![zero(), z(0)]])).unwrap();
        let f = birkhoff_factorize(&t);
        assert_eq!(f.exponents, vec![2, 0]);
        assert!(f.pminus.is_identity() && f.pplus.is_identity());
        let t = Transition::new(lm(vec![vec![z(0), zero()], vec![zero(), z(3)]])).unwrap();
        let f = birkhoff_factorize(&t);
        assert_eq!(f.exponents, vec![3, 0]);
        assert_eq!(f.product(), *t.matrix());
    }

    #[test]
    fn permutation() {
        let t = Transition::new(lm(vec![vec![zero(), z(0)], vec![z(0), zero()]])).unwrap();
        let f = birkhoff_factorize(&t);
        assert_eq!(f.exponents, vec![0, 0]);
        assert_eq!(f.product(), *t.matrix());
        assert!(f.factors_are_valid());
    }

    #[test]
    fn extension_class() {
        // [[1, 0], [z, z^2]]: the nonsplit extension of O(2) by O.
        let t = Transition::new(lm(vec![vec![z(0), zero()], vec![z(1), z(2)]])).unwrap();
        let f = birkhoff_factorize(&t);
        assert_eq!(f.exponents, vec![1, 1]);
        assert_eq!(f.product(), *t.matrix());
        assert!(f.factors_are_valid());
    }

    #[test]
    fn non_unit_rejected() {
        let t = lm(vec![vec![LaurentPoly::from_terms([(0, q(1)), (1, q(1))])]]);
        assert!(matches!(Transition::new(t), Err(Error::NonUnitDeterminant(_))));
    }
}
