//! Input generators shared by the benchmarks.

use logflat_core::algebra::rational::{frac, q};
use logflat_core::algebra::{LaurentMatrix, LaurentPoly};
use logflat_core::castling::{minor_product_divisor, minor_product_fields};
use logflat_core::filtrations::{Filtration, Vector};
use logflat_core::saito::SaitoSystem;
use logflat_core::{Matrix, Rational, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type QMatrix = Matrix<Rational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn invertible(rng: &mut impl Rng, n: usize, bound: i64) -> QMatrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-bound..=bound)));
        if !m.det().is_zero_elem() {
            return m;
        }
    }
}

/// `P J P⁻¹` where `J` has eigenvalues 2 and -1/3 and one Jordan block of size 2.
pub fn mixed_matrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    let mut j = QMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = if i < n / 2 + 1 { q(2) } else { frac(-1, 3) };
    }
    if n > 1 {
        j[(0, 1)] = q(1);
    }
    let p = invertible(rng, n, 2);
    p.mul(&j).mul(&p.inverse().unwrap())
}

/// The logarithmic fields of the product of maximal minors of a generic 2x3 matrix.
pub fn sextic_system() -> SaitoSystem {
    SaitoSystem::new(minor_product_fields(3).unwrap(), minor_product_divisor(3).unwrap()).unwrap()
}

fn elementary(n: usize, i: usize, j: usize, e: LaurentPoly) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    m[(i, j)] = e;
    m
}

/// `P⁻ diag(z^k) P⁺` with the outer factors products of elementary matrices.
pub fn laurent_transition(rng: &mut impl Rng, n: usize, exps: &[i64]) -> LaurentMatrix {
    let mut t = Matrix::diagonal(exps.iter().map(|&e| LaurentPoly::z(e)).collect());
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = q(rng.gen_range(1..=3));
        let k = rng.gen_range(0..=2);
        t = elementary(n, i, j, LaurentPoly::monomial(c.clone(), -k)).mul(&t);
        t = t.mul(&elementary(n, j, i, LaurentPoly::monomial(c, k)));
    }
    t
}

/// `count` complete flags in `Q^m`, each from a random basis.
pub fn flags(rng: &mut impl Rng, m: usize, count: usize) -> Vec<Filtration> {
    (0..count)
        .map(|_| {
            let b = invertible(rng, m, 2);
            let vecs: Vec<Vector> = (0..m).map(|j| (0..m).map(|i| b[(i, j)].clone()).collect()).collect();
            let steps: Vec<(i64, Vec<Vector>)> = (0..m).rev().map(|d| (m as i64 - d as i64, vecs[..=d].to_vec())).collect();
            Filtration::from_spans(m, &steps).unwrap()
        })
        .collect()
}
