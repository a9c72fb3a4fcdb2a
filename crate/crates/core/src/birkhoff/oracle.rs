//! Splitting type from the dimensions `h⁰(E(j))`, computed as kernel ranks
//! of linear maps on truncated section spaces.

use super::{SplittingType, Transition};
use crate::algebra::rational::Rational;
use crate::algebra::Matrix;

/// `h⁰(E(j))`: the dimension of `{s_∞ ∈ Q[z⁻¹]^m : s_∞ z^j T polynomial}`.
/// Since `s_∞ = s_0 T⁻¹ z^{-j}` and `T⁻¹ = adj(T) / (c z^k)`, every
/// exponent of `s_∞` is at least `(m-1) a - k - j` with `a` the smallest
/// exponent of `T`, so truncating at `z^{-K}`, `K = j + k - (m-1) a`, is
/// exact.
pub fn h0(t: &Transition, j: i64) -> usize {
    let m = t.rank() as i64;
    let k = t.det_exponent();
    let a = t.min_exponent();
    let big_k = j + k - (m - 1) * a;
    if big_k < 0 {
        return 0;
    }
    let tm = t.matrix();
    let per_row = (big_k + 1) as usize;
    let unknowns = t.rank() * per_row;
    // Negative exponents reachable: from j - K + min_exp up to -1.
    let lo = j - big_k + a;
    if lo >= 0 {
        return unknowns;
    }
    let neg = (-lo) as usize;
    let eqs = t.rank() * neg;
    let mut mat = Matrix::<Rational>::zeros(eqs, unknowns);
    for i in 0..t.rank() {
        for s in 0..=big_k {
            let col = i * per_row + s as usize;
            for c in 0..t.rank() {
                for (e, coeff) in tm[(i, c)].terms() {
                    let exp = j - s + e;
                    if exp < 0 {
                        let row = c * neg + (-exp - 1) as usize;
                        mat[(row, col)] += coeff;
                    }
                }
            }
        }
    }
    unknowns - mat.rank()
}

/// `#{n_i = -j}` is the second difference of `j ↦ h⁰(E(j))` at `j`.
pub fn splitting_type_rank_oracle(t: &Transition) -> SplittingType {
    let m = t.rank();
    let k = t.det_exponent();
    let a = t.min_exponent();
    // Below this, the truncation bound is negative and h⁰ vanishes.
    let mut j = (m as i64 - 1) * a - k - 1;
    let (mut h2, mut h1) = (0usize, 0usize);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        j += 1;
        let h = h0(t, j);
        let count = h + h2 - 2 * h1;
        out.extend(std::iter::repeat_n(-j, count));
        h2 = h1;
        h1 = h;
    }
    SplittingType::new(out)
}
