mod common;

use common::*;
use logflat_core::algebra::rational::{frac, q};
use logflat_core::algebra::{cyclotomic, gcd, UniPoly};
use logflat_core::birkhoff::{birkhoff_factorize, splitting_type_rank_oracle, Transition};
use logflat_core::castling::{castling_transform, morita_rescale, GroupFactor, PrehomDescriptor, Side};
use logflat_core::filtrations::split_pair;
use logflat_core::json;
use logflat_core::saito::{lie_bracket, VectorField};
use logflat_core::{Matrix, MultiPoly, Rational};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn qmatrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rat(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly2() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((rat(), 0u32..3, 0u32..3), 0..5).prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|(c, a, b)| (c, vec![a, b]))))
}

fn field2() -> impl Strategy<Value = VectorField> {
    (poly2(), poly2()).prop_map(|(a, b)| VectorField::new(vec![a, b]))
}

fn descriptor() -> impl Strategy<Value = PrehomDescriptor> {
    (2usize..9, any::<bool>(), 0usize..4, 1usize..4).prop_flat_map(|(n, dual, t, s)| {
        (1..n).prop_map(move |r| {
            let mut factors = vec![GroupFactor::Torus(t)];
            if s >= 2 {
                factors.push(GroupFactor::SL(s));
            }
            PrehomDescriptor::new(n, r, factors, if dual { Side::Dual } else { Side::Primal }).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_is_multiplicative(a in qmatrix(3), b in qmatrix(3)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        prop_assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn inverse_round_trip(a in qmatrix(3)) {
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
        } else {
            prop_assert_eq!(a.det(), q(0));
        }
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in poly2(), b in poly2(), c in poly2()) {
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = gcd(&ac, &bc);
        if !g.is_zero() {
            prop_assert!(ac.div_exact(&g).is_some());
            prop_assert!(bc.div_exact(&g).is_some());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c).is_some());
            }
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(u in field2(), v in field2(), w in field2()) {
        let uv = lie_bracket(&u, &v).unwrap();
        let vu = lie_bracket(&v, &u).unwrap();
        prop_assert!(uv.add(&vu).is_zero());
        let j1 = lie_bracket(&u, &lie_bracket(&v, &w).unwrap()).unwrap();
        let j2 = lie_bracket(&v, &lie_bracket(&w, &u).unwrap()).unwrap();
        let j3 = lie_bracket(&w, &uv).unwrap();
        prop_assert!(j1.add(&j2).add(&j3).is_zero());
    }

    #[test]
    fn cyclotomic_factors_reassemble(n in 1u64..30) {
        let prod = (1..=n).filter(|d| n % d == 0).fold(UniPoly::one(), |acc, d| acc.mul(&cyclotomic(d)));
        let want = UniPoly::monomial(n as usize).sub(&UniPoly::one());
        prop_assert_eq!(prod, want);
    }

    #[test]
    fn castling_is_an_involution(d in descriptor()) {
        let once = castling_transform(&d);
        prop_assert_eq!(once.ambient_dim(), (d.n - d.r) * d.n);
        prop_assert_eq!(castling_transform(&once), d.clone());
        prop_assert_eq!(PrehomDescriptor::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn morita_round_trip(n in 2i64..20, r0 in 1i64..20, w in rat()) {
        let r = 1 + (r0 - 1) % (n - 1);
        let there = morita_rescale(r, n, &w).unwrap();
        prop_assert_eq!(morita_rescale(n - r, n, &there).unwrap(), w);
    }

    #[test]
    fn birkhoff_planted(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (t, mut planted) = planted_factorization(&mut rng, 3);
        let tr = Transition::new(t.clone()).unwrap();
        let f = birkhoff_factorize(&tr);
        planted.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(&f.splitting_type().0, &planted);
        prop_assert_eq!(f.product(), t);
        prop_assert_eq!(splitting_type_rank_oracle(&tr), f.splitting_type());
    }

    #[test]
    fn pairs_always_split(seed in any::<u64>(), m in 1usize..5) {
        let mut rng = rng(seed);
        let fs = [random_filtration(&mut rng, m), random_filtration(&mut rng, m)];
        let b = split_pair(&fs[0], &fs[1]).unwrap();
        prop_assert!(b.verify(&fs));
    }

    #[test]
    fn matrix_json_round_trip(a in qmatrix(2), p in poly2()) {
        prop_assert_eq!(json::rat_matrix_from_json(&json::rat_matrix_to_json(&a)).unwrap(), a);
        prop_assert_eq!(json::poly_from_json(&json::poly_to_json(&p, 2)).unwrap(), p);
    }
}
