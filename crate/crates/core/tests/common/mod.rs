//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use logflat_core::algebra::rational::{frac, q};
use logflat_core::algebra::{BiLaurent, BiLaurentMatrix, CycloElem, LaurentMatrix, LaurentPoly};
use logflat_core::birkhoff::ConnectionData;
use logflat_core::filtrations::{Filtration, Subspace, Vector};
use logflat_core::saito::LogConnection;
use logflat_core::{Matrix, MultiPoly, Rational, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type QMatrix = Matrix<Rational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn int_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> QMatrix {
    Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-bound..=bound)))
}

pub fn invertible(rng: &mut impl Rng, n: usize, bound: i64) -> QMatrix {
    loop {
        let m = int_matrix(rng, n, bound);
        if !m.det().is_zero_elem() {
            return m;
        }
    }
}

/// `P J P⁻¹` with `J` a random Jordan matrix with nonzero rational
/// eigenvalues, repeated often enough to produce nontrivial blocks.
pub fn conjugated_jordan(rng: &mut impl Rng, n: usize) -> QMatrix {
    let palette: Vec<Rational> = (0..rng.gen_range(1..=2)).map(|_| loop {
        let r = small_rational(rng);
        if r != q(0) {
            break r;
        }
    }).collect();
    let mut j = QMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = palette.choose(rng).unwrap().clone();
        if i + 1 < n && rng.gen_bool(0.5) {
            j[(i, i + 1)] = q(1);
        }
    }
    for i in 0..n - 1 {
        if j[(i, i)] != j[(i + 1, i + 1)] {
            j[(i, i + 1)] = q(0);
        }
    }
    let p = invertible(rng, n, 2);
    p.mul(&j).mul(&p.inverse().unwrap())
}

/// Independent check that `s` is a polynomial in `m`: `vec(s)` must lie in
/// the span of `vec(m^k)`, `k < n`.
pub fn is_polynomial_in(s: &QMatrix, m: &QMatrix) -> bool {
    let n = m.rows();
    let mut powers = vec![QMatrix::identity(n)];
    for k in 1..n {
        powers.push(powers[k - 1].mul(m));
    }
    let flat = |a: &QMatrix| a.iter().cloned().collect::<Vec<_>>();
    let cols: Vec<Vec<Rational>> = powers.iter().map(flat).collect();
    let a = Matrix::from_fn(n * n, n, |r, c| cols[c][r].clone());
    let target = flat(s);
    let aug = Matrix::from_fn(n * n, n + 1, |r, c| if c < n { cols[c][r].clone() } else { target[r].clone() });
    a.rank() == aug.rank()
}

pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = QMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    out
}

pub fn qm(rows: &[&[i64]]) -> QMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
}

/// Finite-order rational matrices: orders 1, 2, 3, 4, 6, alone, in blocks,
/// and conjugated by random integer matrices. Each is paired with its order.
pub fn finite_order_fixtures(rng: &mut impl Rng) -> Vec<(QMatrix, u32)> {
    let one = qm(&[&[1]]);
    let minus = qm(&[&[-1]]);
    let rot = qm(&[&[0, -1], &[1, 0]]);
    let c3 = qm(&[&[0, -1], &[1, -1]]);
    let c6 = qm(&[&[0, -1], &[1, 1]]);
    let mut base = vec![
        (QMatrix::identity(2), 1),
        (QMatrix::identity(2).neg(), 2),
        (rot.clone(), 4),
        (c3.clone(), 3),
        (c6.clone(), 6),
        (block_diag(&[rot.clone(), minus.clone()]), 4),
        (block_diag(&[c3.clone(), one.clone()]), 3),
        (block_diag(&[c3.clone(), minus.clone()]), 6),
        (block_diag(&[c6.clone(), rot.clone()]), 12),
        (block_diag(&[c3.clone(), c3.clone()]), 3),
    ];
    let conj: Vec<(QMatrix, u32)> = base
        .iter()
        .map(|(s, o)| {
            let p = invertible(rng, s.rows(), 2);
            (p.mul(s).mul(&p.inverse().unwrap()), *o)
        })
        .collect();
    base.extend(conj);
    base
}

pub fn cyclo_zero(n: usize) -> Matrix<CycloElem> {
    Matrix::from_fn(n, n, |_, _| CycloElem::zero_elem())
}

fn z(e: i64, c: Rational) -> LaurentPoly {
    LaurentPoly::monomial(c, e)
}

/// Product of random elementary matrices `I + c z^{±k} E_ij`, a permutation
/// and a constant diagonal: unimodular and polynomial in `z^{sign}`.
pub fn unimodular(rng: &mut impl Rng, n: usize, sign: i64, max_k: i64) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    if n > 1 {
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let mut e = LaurentMatrix::identity(n);
            e[(i, j)] = z(sign * rng.gen_range(0..=max_k), q(rng.gen_range(1..=3)));
            m = m.mul(&e);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let p = Matrix::from_fn(n, n, |i, j| if perm[i] == j { LaurentPoly::z(0) } else { LaurentPoly::zero() });
        m = m.mul(&p);
    }
    let d = Matrix::diagonal((0..n).map(|_| z(0, q(*[-2, -1, 1, 2, 3].choose(rng).unwrap()))).collect());
    m.mul(&d)
}

/// `(T, planted exponents)` with `T = P⁻ diag(z^{n_i}) P⁺`.
pub fn planted_factorization(rng: &mut impl Rng, max_rank: usize) -> (LaurentMatrix, Vec<i64>) {
    let n = rng.gen_range(1..=max_rank);
    let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let pm = unimodular(rng, n, -1, 1);
    let pp = unimodular(rng, n, 1, 1);
    let d = Matrix::diagonal(exps.iter().map(|&e| LaurentPoly::z(e)).collect());
    (pm.mul(&d).mul(&pp), exps)
}

pub fn laurent_degree(m: &LaurentMatrix) -> i64 {
    let lo = m.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
    let hi = m.iter().filter_map(LaurentPoly::max_exp).max().unwrap_or(0);
    hi - lo
}

pub fn cross() -> (MultiPoly, i64, i64, i64) {
    (MultiPoly::var(0).mul(&MultiPoly::var(1)), 1, 1, 2)
}

pub fn cusp() -> (MultiPoly, i64, i64, i64) {
    let x = MultiPoly::var(0);
    let y = MultiPoly::var(1);
    (x.mul(&x).sub(&y.mul(&y).mul(&y)), 3, 2, 6)
}

/// A monomial `c x^a y^b` with `p a + q b = w`, `a, b ≥ 0`, if one exists.
fn weighted_monomial(rng: &mut impl Rng, p: i64, q_: i64, w: i64) -> Option<BiLaurent> {
    if w < 0 {
        return None;
    }
    let options: Vec<(i64, i64)> = (0..=w / q_).filter(|b| (w - q_ * b) % p == 0).map(|b| ((w - q_ * b) / p, b)).collect();
    let &(a, b) = options.choose(rng)?;
    Some(BiLaurent::monomial(q(rng.gen_range(1..=3)), a, b))
}

fn chart_gauge(rng: &mut impl Rng, p: i64, q_: i64, r: &[Rational], at_zero: bool) -> BiLaurentMatrix {
    let n = r.len();
    let mut u = BiLaurentMatrix::identity(n);
    if n == 2 {
        let w = &r[1] - &r[0];
        if w.is_integer() && rng.gen_bool(0.7) {
            if let Some(m) = weighted_monomial(rng, p, q_, w.to_integer().try_into().unwrap()) {
                u[(0, 1)] = m;
            }
        }
    }
    let d = Matrix::diagonal(
        (0..n)
            .map(|_| {
                let e = rng.gen_range(-2..=2);
                let c = q(*[1, -1, 2].choose(rng).unwrap());
                if at_zero { BiLaurent::monomial(c, e, 0) } else { BiLaurent::monomial(c, 0, e) }
            })
            .collect(),
    );
    u.mul(&d)
}

/// Equivariant quasi-unipotent connections of rank ≤ 2 on the cross and the
/// cusp, seen through random chart gauges.
pub fn extension_corpus(rng: &mut impl Rng, count: usize) -> Vec<ConnectionData> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (f, p, q_, n) = if out.len() % 2 == 0 { cross() } else { cusp() };
        let rank = rng.gen_range(1..=2);
        let mut r = vec![small_rational(rng)];
        if rank == 2 {
            let r2 = if rng.gen_bool(0.7) { &r[0] + q(rng.gen_range(0..=4)) } else { small_rational(rng) };
            r.push(r2);
        }
        let omega_e = Matrix::diagonal(r.clone());
        // Ω(H) must satisfy E(Ω_H) + [Ω_E, Ω_H] = (n - p - q) Ω_H.
        let c = n - p - q_;
        let mut omega_h = BiLaurentMatrix::zeros(rank, rank);
        if c == 0 {
            for i in 0..rank {
                omega_h[(i, i)] = BiLaurent::constant(q(rng.gen_range(-2..=2)));
            }
        }
        if rank == 2 {
            let w = &r[1] - &r[0];
            if w.is_integer() && rng.gen_bool(0.5) {
                let d: i64 = w.to_integer().try_into().unwrap();
                if let Some(m) = weighted_monomial(rng, p, q_, d + c) {
                    omega_h[(0, 1)] = m;
                }
            }
        }
        let k0 = chart_gauge(rng, p, q_, &r, true);
        let kinf = chart_gauge(rng, p, q_, &r, false);
        let data = ConnectionData::from_global(f, p, q_, &omega_e, &omega_h, &k0, &kinf)
            .expect("corpus generator produced inconsistent gauges");
        out.push(data);
    }
    out
}

/// Pointwise curvature of a connection on `(E, H)` with `[E, H] = c H`,
/// evaluated at the given points.
pub fn flat_at_points(conn: &LogConnection, c: i64, points: &[[Rational; 2]]) -> bool {
    let fields = &conn.system.fields;
    let (oe, oh) = (&conn.omegas[0], &conn.omegas[1]);
    let apply = |k: usize, m: &Matrix<MultiPoly>| {
        m.map(|e| {
            fields[k].coeffs.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, a)| acc.add(&a.mul(&e.derivative(i))))
        })
    };
    let curv = apply(0, oh).sub(&apply(1, oe)).add(&oe.mul(oh).sub(&oh.mul(oe))).sub(&oh.scale(&MultiPoly::from_int(c)));
    points.iter().all(|pt| curv.iter().all(|e| e.eval(pt).is_zero_elem()))
}

pub fn random_points(rng: &mut impl Rng, k: usize) -> Vec<[Rational; 2]> {
    (0..k).map(|_| [small_rational(rng), small_rational(rng)]).collect()
}

/// A random descending filtration of `Q^m` built from the columns of a
/// random invertible matrix.
pub fn random_filtration(rng: &mut impl Rng, m: usize) -> Filtration {
    let b = invertible(rng, m, 2);
    let vecs: Vec<Vector> = (0..m).map(|j| (0..m).map(|i| b[(i, j)].clone()).collect()).collect();
    let mut dims: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.6)).collect();
    if dims.is_empty() {
        dims.push(rng.gen_range(0..m));
    }
    dims.reverse();
    let mut j = rng.gen_range(-2..=1);
    let mut steps = Vec::new();
    for d in dims {
        steps.push((j, vecs[..d].to_vec()));
        j += rng.gen_range(1..=2);
    }
    Filtration::from_spans(m, &steps).unwrap()
}

/// Every vector with entries in `{0, 1}` except zero.
pub fn pool_vectors(m: usize) -> Vec<Vector> {
    (1u32..(1 << m)).map(|mask| (0..m).map(|i| q(((mask >> i) & 1) as i64)).collect()).collect()
}

/// One- and two-step filtrations whose steps are spans of pool vectors.
pub fn census_filtrations(m: usize) -> Vec<Filtration> {
    let pool = pool_vectors(m);
    let mut subs: Vec<Subspace> = Vec::new();
    let mut add = |s: Subspace| {
        if s.dim() > 0 && s.dim() < m && !subs.contains(&s) {
            subs.push(s);
        }
    };
    for a in &pool {
        add(Subspace::span(m, std::slice::from_ref(a)).unwrap());
        for b in &pool {
            add(Subspace::span(m, &[a.clone(), b.clone()]).unwrap());
        }
    }
    let mut out: Vec<Filtration> = subs.iter().map(|s| Filtration::one_step(1, s.clone())).collect();
    for a in &subs {
        for b in &subs {
            if a.contains_space(b) && a != b {
                out.push(Filtration::new(m, vec![(1, a.clone()), (2, b.clone())]).unwrap());
            }
        }
    }
    out
}

/// Splittability via the lattice criterion: a family of chains splits iff
/// the lattice it generates is distributive. In a distributive lattice every
/// generated element is a sum of meets taking one step from each chain, so
/// that set must already be closed under intersection.
pub fn distributive_oracle(fs: &[Filtration]) -> bool {
    let m = fs[0].ambient();
    let chains: Vec<Vec<Subspace>> = fs
        .iter()
        .map(|f| {
            let mut c = vec![Subspace::full(m)];
            c.extend(f.steps().iter().map(|(_, s)| s.clone()));
            c.push(Subspace::zero(m));
            c
        })
        .collect();
    let mut meets: Vec<Subspace> = vec![Subspace::full(m)];
    for chain in &chains {
        let mut next = Vec::new();
        for a in &meets {
            for b in chain {
                let s = a.intersect(b);
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        meets = next;
    }
    let mut elems = meets;
    let mut done = 0;
    while done < elems.len() {
        let a = elems[done].clone();
        for j in 0..=done {
            let s = a.sum(&elems[j]);
            if !elems.contains(&s) {
                elems.push(s);
            }
        }
        done += 1;
    }
    let n = elems.len();
    let index = |s: &Subspace| elems.iter().position(|e| e == s);
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let Some(m) = index(&elems[i].intersect(&elems[j])) else {
                return false;
            };
            let s = index(&elems[i].sum(&elems[j])).expect("closed under sums");
            meet[i][j] = m;
            meet[j][i] = m;
            join[i][j] = s;
            join[j][i] = s;
        }
    }
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]])))
}
