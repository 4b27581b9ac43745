//! Property tests: invariance under change of lattice basis and agreement
//! with the brute-force oracles.

mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toritrans::classify::theta_toric;
use toritrans::cli::FanDocument;
use toritrans::cone::{hilbert_basis, hilbert_basis_with_limit, RationalCone};
use toritrans::cox::divisor_class_group;
use toritrans::fan::{detect_projective_product, quasi_affine_envelope, Fan};
use toritrans::lattice::{smith_normal_form, IntMatrix, IntVector};
use toritrans::oracle::{brute_dual_equivalence, brute_hilbert_basis, brute_irreducibles_rank3};
use toritrans::surfaces::{cone_normal_form_2d, surfaces_isomorphic, SurfaceForm};

use common::{random_pointed_cone, random_unimodular};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coord_bound(sigma: &RationalCone) -> i64 {
    (0..sigma.rank())
        .map(|j| {
            sigma
                .rays()
                .iter()
                .map(|r| r.to_i64s().unwrap()[j].abs())
                .sum::<i64>()
        })
        .max()
        .unwrap_or(1)
        .max(1)
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r).prop_map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            IntMatrix::from_i64_rows(&refs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_factors(a in small_matrix()) {
        let snf = smith_normal_form(&a);
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn normal_form_is_basis_independent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = random_pointed_cone(&mut r, 2, 7, true);
        let g = random_unimodular(&mut r, 2);
        let (form, t) = cone_normal_form_2d(&sigma).unwrap();
        let (moved, _) = cone_normal_form_2d(&sigma.image(&g).unwrap()).unwrap();
        prop_assert_eq!(&form, &moved);
        prop_assert!(t.is_unimodular());
        prop_assert_eq!(sigma.image(&t).unwrap(), form.cone());
    }

    #[test]
    fn isomorphism_criterion_is_an_equivalence(a in 0i64..9, b in 1i64..10, c in 0i64..9) {
        let (Ok(s), Ok(t)) = (SurfaceForm::new(a % b, b), SurfaceForm::new(c % b, b)) else {
            return Ok(());
        };
        prop_assert!(surfaces_isomorphic(&s, &s));
        prop_assert_eq!(surfaces_isomorphic(&s, &t), surfaces_isomorphic(&t, &s));
        let normal = |f: &SurfaceForm| cone_normal_form_2d(&f.cone()).unwrap().0;
        prop_assert_eq!(surfaces_isomorphic(&s, &t), normal(&s) == normal(&t));
    }

    #[test]
    fn theta_is_basis_independent(seed in any::<u64>(), rank in 2usize..4) {
        let mut r = rng(seed);
        let sigma = random_pointed_cone(&mut r, rank, 3, false);
        let fan = Fan::single_cone(&sigma).unwrap();
        let g = random_unimodular(&mut r, rank);
        let v = theta_toric(&fan).unwrap();
        let w = theta_toric(&fan.transform(&g).unwrap()).unwrap();
        prop_assert_eq!((v.lower, v.upper, v.homogeneous, v.flexible), (w.lower, w.upper, w.homogeneous, w.flexible));
        prop_assert!(v.is_monotone());
    }

    #[test]
    fn products_survive_conjugation(seed in any::<u64>(), a in 1usize..4, b in 1usize..3) {
        let mut r = rng(seed);
        let fan = Fan::projective_space(a).product(&Fan::projective_space(b));
        let g = random_unimodular(&mut r, a + b);
        let mut want = vec![a, b];
        want.sort();
        prop_assert_eq!(detect_projective_product(&fan.transform(&g).unwrap()), Some(want));
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>(), rank in 2usize..4) {
        let mut r = rng(seed);
        let sigma = random_pointed_cone(&mut r, rank, 9, false);
        prop_assert_eq!(sigma.dual().dual(), sigma.clone());
        prop_assert!(brute_dual_equivalence(&sigma, &sigma.dual(), 4));
    }

    #[test]
    fn planar_hilbert_bases_match_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = random_pointed_cone(&mut r, 2, 9, false);
        let exact = hilbert_basis(&sigma).unwrap();
        let brute = brute_hilbert_basis(&sigma, coord_bound(&sigma)).unwrap();
        prop_assert_eq!(exact, brute);
    }

    #[test]
    fn single_cones_are_quasi_affine(seed in any::<u64>(), rank in 1usize..4) {
        let mut r = rng(seed);
        let sigma = random_pointed_cone(&mut r, rank, 5, false);
        let (qa, envelope) = quasi_affine_envelope(&Fan::single_cone(&sigma).unwrap()).unwrap();
        prop_assert!(qa);
        prop_assert_eq!(envelope, Some(sigma));
    }

    #[test]
    fn simplicial_class_group_order_is_the_index(seed in any::<u64>(), rank in 2usize..4) {
        let mut r = rng(seed);
        let gens: Vec<IntVector> = loop {
            let g: Vec<IntVector> = (0..rank).map(|_| common::random_vector(&mut r, rank, 4)).collect();
            let m = IntMatrix::from_rows(&g, rank);
            if !m.determinant().is_zero() && g.iter().all(IntVector::is_primitive) {
                break g;
            }
        };
        let sigma = RationalCone::from_generators(rank, &gens).unwrap();
        let cl = divisor_class_group(&Fan::single_cone(&sigma).unwrap()).unwrap();
        let index = IntMatrix::from_rows(sigma.rays(), rank).determinant().abs();
        prop_assert_eq!(cl.order(), Some(index));
    }

    #[test]
    fn fan_documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fan = Fan::single_cone(&random_pointed_cone(&mut r, 3, 5, false)).unwrap();
        let doc = FanDocument::from_fan(&fan, Some("random".into()));
        let text = serde_json::to_string(&doc).unwrap();
        let back: FanDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_fan().unwrap().0, fan);
    }
}

#[test]
fn spatial_hilbert_bases_match_enumeration() {
    let mut r = rng(41);
    let mut larger = 0;
    for _ in 0..40 {
        let sigma = random_pointed_cone(&mut r, 3, 3, true);
        let exact = hilbert_basis_with_limit(&sigma, 3).unwrap();
        let brute = brute_irreducibles_rank3(&sigma, coord_bound(&sigma)).unwrap();
        assert_eq!(exact, brute, "{sigma}");
        if exact.len() > sigma.rays().len() {
            larger += 1;
        }
    }
    // the sample must include cones whose basis goes beyond the rays
    assert!(larger >= 5, "only {larger} non-trivial cones");
}
