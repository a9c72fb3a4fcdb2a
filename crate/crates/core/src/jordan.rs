//! Multiplicative Jordan–Chevalley decomposition, quasi-unipotent weights,
//! spectral central logarithms and Deligne residues.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::cyclo::{CycloElem, CycloField};
use crate::algebra::rational::{self, Rational};
use crate::algebra::unipoly::{char_poly, cyclotomic_split_uni, min_poly};
use crate::algebra::{Field, Matrix, Ring, UniPoly};
use crate::error::{Error, Result};

pub type QMatrix = Matrix<Rational>;

/// `M = S U = U S` with `S` semisimple and `U` unipotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCPair {
    pub s: QMatrix,
    pub u: QMatrix,
}

/// Additive decomposition `M = S + N` with `S` semisimple, `N` nilpotent,
/// `SN = NS`, by Newton iteration on the squarefree part of the
/// characteristic polynomial.
pub fn additive_jordan(m: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    let p = char_poly(m).squarefree_part();
    let dp = p.derivative();
    let mut s = m.clone();
    loop {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            break;
        }
        let inv = dp.eval_matrix(&s).inverse().expect("p' is invertible at S");
        s = s.sub(&ps.mul(&inv));
    }
    let n = m.sub(&s);
    Ok((s, n))
}

pub fn jordan_chevalley(m: &QMatrix) -> Result<JCPair> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    let (s, n) = additive_jordan(m)?;
    let sinv = s.inverse().ok_or(Error::Singular)?;
    let u = QMatrix::identity(m.rows()).add(&sinv.mul(&n));
    Ok(JCPair { s, u })
}

/// Minimal polynomial is squarefree.
pub fn is_semisimple(s: &QMatrix) -> bool {
    let p = min_poly(s);
    p.gcd(&p.derivative()) == UniPoly::one()
}

pub fn is_unipotent(u: &QMatrix) -> bool {
    let n = u.rows();
    u.sub(&QMatrix::identity(n)).pow(n as u32).is_zero()
}

/// Coefficients `c` with `Σ c_i M^i = S`, if any.
pub fn polynomial_in(s: &QMatrix, m: &QMatrix) -> Option<UniPoly> {
    let n = m.rows();
    let mut powers = vec![QMatrix::identity(n)];
    for _ in 1..n.max(1) {
        powers.push(powers.last().unwrap().mul(m));
    }
    let a = Matrix::from_fn(n * n, powers.len(), |r, c| powers[c][(r / n, r % n)].clone());
    let b: Vec<Rational> = (0..n * n).map(|r| s[(r / n, r % n)].clone()).collect();
    a.solve(&b).map(UniPoly::new)
}

/// One eigenvalue class `e^{2πi k/d}` of a finite-order semisimple matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub order: u64,
    pub k: u64,
    pub multiplicity: usize,
    /// `k/d`, in `[0, 1)` on the standard branch.
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub entries: Vec<WeightEntry>,
    /// lcm of all orders.
    pub field_order: u64,
}

impl WeightData {
    /// All weights with multiplicity, sorted.
    pub fn weights(&self) -> Vec<Rational> {
        let mut w: Vec<Rational> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.weight.clone(), e.multiplicity))
            .collect();
        w.sort();
        w
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Exponent `j` with eigenvalue `ζ_m^j`, `m` the field order.
    pub fn zeta_exponent(&self, e: &WeightEntry) -> u64 {
        e.k * (self.field_order / e.order)
    }
}

fn poly_text(p: &UniPoly) -> String {
    p.to_multipoly(0).display(&["t".to_string()]).to_string()
}

/// Weights of a semisimple matrix whose eigenvalues are roots of unity.
pub fn quasi_unipotent_weights(s: &QMatrix) -> Result<WeightData> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if !is_semisimple(s) {
        return Err(Error::NotSemisimple);
    }
    let split = cyclotomic_split_uni(&char_poly(s));
    if split.remainder.degree().unwrap_or(0) > 0 {
        let g = split.remainder.monic();
        let factor = cyclotomic_split_uni(&min_poly(s)).remainder.monic();
        let named = if factor.degree().unwrap_or(0) > 0 { factor } else { g };
        return Err(Error::NotQuasiUnipotent(poly_text(&named)));
    }
    let mut entries = Vec::new();
    let mut field_order = 1u64;
    for (d, mult) in split.factors {
        field_order = field_order.lcm(&d);
        for k in 0..d {
            if k.gcd(&d) == 1 {
                entries.push(WeightEntry {
                    order: d,
                    k,
                    multiplicity: mult as usize,
                    weight: Rational::new(k.into(), d.into()),
                });
            }
        }
    }
    entries.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(WeightData { entries, field_order })
}

/// `A = Σ q_j P_j` with exact spectral projectors over `Q[t]/Φ_m`.
#[derive(Clone, Debug)]
pub struct CentralLog {
    pub weights: WeightData,
    pub field: Arc<CycloField>,
    /// One projector per entry of `weights`, same order.
    pub projectors: Vec<Matrix<CycloElem>>,
    pub log: Matrix<CycloElem>,
}

pub fn to_cyclo(m: &QMatrix) -> Matrix<CycloElem> {
    m.map(CycloElem::from_rational)
}

pub fn central_log(s: &QMatrix) -> Result<CentralLog> {
    let weights = quasi_unipotent_weights(s)?;
    let field = CycloField::new(weights.field_order);
    let n = s.rows();
    let sc = to_cyclo(s);
    let id = Matrix::<CycloElem>::identity(n);
    let eig: Vec<CycloElem> = weights.entries.iter().map(|e| field.zeta_pow(weights.zeta_exponent(e))).collect();
    let mut projectors = Vec::with_capacity(eig.len());
    for (j, lj) in eig.iter().enumerate() {
        let mut p = id.clone();
        for (i, li) in eig.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = lj.minus(li).inv().expect("distinct roots of unity");
            p = p.mul(&sc.sub(&id.scale(li))).scale(&denom);
        }
        projectors.push(p);
    }
    let mut log = Matrix::<CycloElem>::zeros(n, n);
    for (e, p) in weights.entries.iter().zip(&projectors) {
        log = log.add(&p.scale(&CycloElem::from_rational(&e.weight)));
    }
    Ok(CentralLog { weights, field, projectors, log })
}

impl CentralLog {
    /// `Σ P = I`, `P_j P_k = 0` for `j ≠ k`, `S P_j = ζ^{k_j} P_j`, `[A, S] = 0`.
    pub fn verify(&self, s: &QMatrix) -> bool {
        let n = s.rows();
        let sc = to_cyclo(s);
        let sum = self.projectors.iter().fold(Matrix::<CycloElem>::zeros(n, n), |acc, p| acc.add(p));
        if !sum.is_identity() {
            return false;
        }
        for (j, pj) in self.projectors.iter().enumerate() {
            for (k, pk) in self.projectors.iter().enumerate() {
                if j != k && !pj.mul(pk).is_zero() {
                    return false;
                }
            }
            let e = &self.weights.entries[j];
            let z = self.field.zeta_pow(self.weights.zeta_exponent(e));
            if sc.mul(pj) != pj.scale(&z) {
                return false;
            }
        }
        self.log.commutator(&sc).is_zero()
    }

    /// The log as a rational matrix when all its entries are rational.
    pub fn rational_log(&self) -> Option<QMatrix> {
        self.log.try_map(|e| e.as_rational().ok_or(())).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    GL,
    SL,
}

/// Whether `S` lies in the identity component of the centre of its
/// centralizer. For GL this always holds. For SL the centre of the
/// centralizer is `{Σ c_j P_j : Π c_j^{m_j} = 1}`, so the test is whether
/// integers `n_j` exist with `Σ m_j (q_j + n_j) = 0`, i.e. whether
/// `gcd(m_j)` divides `Σ m_j q_j`.
pub fn well_behaved_check(s: &QMatrix, group: Group) -> Result<bool> {
    let w = quasi_unipotent_weights(s)?;
    match group {
        Group::GL => Ok(true),
        Group::SL => {
            if s.det() != Rational::one() {
                return Err(Error::Invalid("det S must be 1 for SL".into()));
            }
            let total: Rational = w
                .entries
                .iter()
                .map(|e| &e.weight * Rational::from_integer(e.multiplicity.into()))
                .sum();
            debug_assert!(total.is_integer());
            let g = w.entries.iter().fold(0usize, |g, e| g.gcd(&e.multiplicity));
            let total = total.to_integer();
            Ok(g != 0 && (total % num_bigint::BigInt::from(g)).is_zero())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Branch {
    /// Weights in `[0, 1)`.
    #[default]
    Standard,
    /// Weights in `(-1, 0]`.
    Alternate,
}

/// Semisimple weights plus the nilpotent logarithm of the unipotent part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePair {
    pub weights: WeightData,
    pub nilpotent: QMatrix,
    pub semisimple: QMatrix,
}

/// `Σ_{k≥1} (-1)^{k+1} (U - I)^k / k`.
pub fn unipotent_log(u: &QMatrix) -> QMatrix {
    let n = u.rows();
    let x = u.sub(&QMatrix::identity(n));
    let mut acc = QMatrix::zeros(n, n);
    let mut pw = x.clone();
    for k in 1..=n.max(1) {
        let c = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
        acc = acc.add(&pw.scale(&c));
        pw = pw.mul(&x);
    }
    acc
}

/// `Σ N^k / k!` for nilpotent `N`.
pub fn nilpotent_exp(nil: &QMatrix) -> QMatrix {
    let n = nil.rows();
    let mut acc = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for k in 1..=n {
        term = term.mul(nil).scale(&Rational::new(1.into(), k.into()));
        acc = acc.add(&term);
    }
    acc
}

pub fn deligne_residue(m: &QMatrix) -> Result<ResiduePair> {
    deligne_residue_with(m, Branch::Standard)
}

pub fn deligne_residue_with(m: &QMatrix, branch: Branch) -> Result<ResiduePair> {
    let jc = jordan_chevalley(m)?;
    let mut weights = quasi_unipotent_weights(&jc.s)?;
    if branch == Branch::Alternate {
        for e in &mut weights.entries {
            if !e.weight.is_zero() {
                e.weight -= Rational::one();
            }
        }
        weights.entries.sort_by(|a, b| a.weight.cmp(&b.weight));
    }
    Ok(ResiduePair { weights, nilpotent: unipotent_log(&jc.u), semisimple: jc.s })
}

/// Rational eigenvalues of a semisimple matrix with eigenbases. Fails with
/// the offending irreducible factor when an eigenvalue is irrational.
pub fn rational_eigenspaces(s: &QMatrix) -> Result<Vec<(Rational, Vec<Vec<Rational>>)>> {
    let p = min_poly(s);
    let roots = p.rational_roots();
    let mut rest = p.clone();
    for (r, k) in &roots {
        rest = rest.div_exact(&UniPoly::linear(r).pow(*k)).expect("root divides");
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::NotQuasiUnipotent(poly_text(&rest.monic())));
    }
    let n = s.rows();
    Ok(roots
        .into_iter()
        .map(|(r, _)| (r.clone(), s.sub(&QMatrix::identity(n).scale(&r)).kernel()))
        .collect())
}

pub fn weight_text(w: &Rational) -> String {
    rational::to_text(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q};

    fn m(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn jc_examples() {
        let j = jordan_chevalley(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert!(j.s.is_identity());
        let d = m(&[&[2, 0], &[0, 3]]);
        let j = jordan_chevalley(&d).unwrap();
        assert_eq!(j.s, d);
        assert!(j.u.is_identity());
        let j = jordan_chevalley(&m(&[&[2, 1], &[0, 2]])).unwrap();
        assert_eq!(j.s, m(&[&[2, 0], &[0, 2]]));
        assert_eq!(j.u, Matrix::from_rows(vec![vec![q(1), frac(1, 2)], vec![q(0), q(1)]]));
        assert_eq!(jordan_chevalley(&m(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn weights() {
        let w = quasi_unipotent_weights(&m(&[&[-1, 0], &[0, -1]])).unwrap();
        assert_eq!(w.weights(), vec![frac(1, 2), frac(1, 2)]);
        let w = quasi_unipotent_weights(&m(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(w.weights(), vec![frac(1, 4), frac(3, 4)]);
        assert_eq!(quasi_unipotent_weights(&m(&[&[2]])), Err(Error::NotQuasiUnipotent("t - 2".into())));
        assert_eq!(quasi_unipotent_weights(&m(&[&[1, 1], &[0, 1]])), Err(Error::NotSemisimple));
    }

    #[test]
    fn central_logs() {
        let c = central_log(&m(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(c.rational_log().unwrap().is_zero());
        let s = m(&[&[-1, 0], &[0, -1]]);
        let c = central_log(&s).unwrap();
        assert_eq!(c.rational_log().unwrap(), QMatrix::identity(2).scale(&frac(1, 2)));
        let r = m(&[&[0, -1], &[1, 0]]);
        let c = central_log(&r).unwrap();
        assert_eq!(c.field.order, 4);
        assert!(c.verify(&r));
    }

    #[test]
    fn well_behaved() {
        let minus = m(&[&[-1, 0], &[0, -1]]);
        assert!(!well_behaved_check(&minus, Group::SL).unwrap());
        assert!(well_behaved_check(&minus, Group::GL).unwrap());
        assert!(well_behaved_check(&QMatrix::identity(2), Group::SL).unwrap());
        // Rotation: centralizer is a torus, weights 1/4 and -1/4.
        assert!(well_behaved_check(&m(&[&[0, -1], &[1, 0]]), Group::SL).unwrap());
    }

    #[test]
    fn residues() {
        let r = deligne_residue(&QMatrix::identity(2)).unwrap();
        assert!(r.nilpotent.is_zero());
        let r = deligne_residue(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(r.weights.weights(), vec![q(0), q(0)]);
        assert_eq!(r.nilpotent, m(&[&[0, 1], &[0, 0]]));
        let minus = m(&[&[-1, -1], &[0, -1]]);
        let r = deligne_residue(&minus).unwrap();
        assert_eq!(r.weights.weights(), vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(r.nilpotent, m(&[&[0, 1], &[0, 0]]));
        let alt = deligne_residue_with(&minus, Branch::Alternate).unwrap();
        assert_eq!(alt.weights.weights(), vec![frac(-1, 2), frac(-1, 2)]);
    }
}
