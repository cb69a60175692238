mod common;

use common::*;
use hawkins_core::bialgebra::{dual_bracket, dual_cocycle, Cocycle};
use hawkins_core::catalog;
use hawkins_core::document::InputDocument;
use hawkins_core::hawkins::{analyze, heisenberg_build, heisenberg_condition, linear_case, triangular_analysis};
use hawkins_core::lie::LieAlgebra;
use hawkins_core::metric::{
    is_flat, lc_product, metacurvature, metacurvature_via_parallel, milnor_check, InnerProduct,
};
use hawkins_core::multilinear::{MultiVector, Space};
use hawkins_core::scalar;
use hawkins_core::StrongCompatibility;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn as_prop(check: Check) -> std::result::Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn curvature_identities(seed in any::<u64>(), dim in 2usize..=4) {
        let mut rng = seeded(seed);
        let l = random_lie(&mut rng, dim);
        let m = random_metric(&mut rng, dim);
        as_prop(check_levi_civita(&l, &m))?;
        as_prop(check_curvature(&l, &m))?;
    }

    #[test]
    fn schouten_identities(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = seeded(seed);
        let l = random_lie(&mut rng, dim);
        as_prop(check_schouten(&mut rng, &l))?;
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = seeded(seed);
        let l = random_lie(&mut rng, dim);
        as_prop(check_differential(&mut rng, &l))?;
    }

    #[test]
    fn jacobi_iff_d_squared_vanishes(
        dim in 3usize..=4,
        raw in prop::collection::vec(-1i64..=1, 24),
    ) {
        // arbitrary antisymmetric table, usually not Lie
        let mut entries = Vec::new();
        let mut it = raw.iter().cycle();
        for i in 0..dim {
            for j in i + 1..dim {
                let terms = (0..dim).map(|k| (scalar::int(*it.next().unwrap()), k)).collect();
                entries.push((i, j, terms));
            }
        }
        let l = LieAlgebra::from_brackets(dim, &entries).unwrap();
        let d_squared_zero = (0..dim).all(|k| {
            let e = MultiVector::basis_vector(dim, k, Space::Dual).unwrap();
            l.ce_differential(&l.ce_differential(&e).unwrap()).unwrap().is_zero()
        });
        prop_assert_eq!(l.jacobi_defect().is_empty(), d_squared_zero);
        prop_assert_eq!(l.is_lie(), d_squared_zero);
    }

    #[test]
    fn double_duality(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = seeded(seed);
        let b = random_bialgebra(&mut rng, dim);
        prop_assert!(b.diagnose().is_bialgebra(), "generator produced an invalid bialgebra");
        as_prop(check_double_duality(&b))?;
        let l = random_lie(&mut rng, dim);
        prop_assert!(dual_bracket(&dual_cocycle(&l)).same_brackets(&l));
    }

    #[test]
    fn milnor_implies_unimodular(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = seeded(seed);
        let (l, m) = random_milnor(&mut rng, dim);
        prop_assert!(milnor_check(&l, &m).is_milnor);
        as_prop(check_milnor_unimodular(&l, &m))?;
    }

    #[test]
    fn flat_iff_milnor(seed in any::<u64>(), dim in 2usize..=6, tilt in any::<bool>()) {
        let mut rng = seeded(seed);
        let (l, m) = if tilt { random_perturbed(&mut rng, dim) } else { random_milnor(&mut rng, dim) };
        let flat = is_flat(&lc_product(&l, &m).unwrap(), &l);
        prop_assert_eq!(flat, milnor_check(&l, &m).is_milnor);
    }

    #[test]
    fn linear_case_iff_milnor(seed in any::<u64>(), dim in 2usize..=5, tilt in any::<bool>()) {
        let mut rng = seeded(seed);
        let (l, m) = if tilt { random_perturbed(&mut rng, dim) } else { random_milnor(&mut rng, dim) };
        prop_assert_eq!(linear_case(&l, &m).unwrap(), milnor_check(&l, &m).is_milnor);
    }

    #[test]
    fn metacurvature_routes_agree(seed in any::<u64>(), dim in 2usize..=5) {
        // Both routes only use D_α = ad_α on S, so any linear ρ will do.
        let mut rng = seeded(seed);
        let (l, m) = random_milnor(&mut rng, dim);
        let images = (0..dim).map(|_| random_multivector(&mut rng, dim, 2, Space::Dual)).collect();
        let rho = Cocycle::new(images).unwrap();
        let s = milnor_check(&l, &m).s;
        let basis = s.basis();
        for a in basis {
            for b in basis {
                for c in basis {
                    prop_assert_eq!(
                        metacurvature(&l, &m, &rho, a, b, c).unwrap(),
                        metacurvature_via_parallel(&l, &m, &rho, a, b, c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn metric_scaling_invariance(seed in any::<u64>(), dim in 2usize..=4, num in 1i64..=4, den in 1i64..=3) {
        let mut rng = seeded(seed);
        let b = random_bialgebra(&mut rng, dim);
        let m = if rng.random_bool(0.5) { random_metric(&mut rng, dim) } else { random_milnor(&mut rng, dim).1 };
        let scaled = m.scaled(&scalar::frac(num, den)).unwrap();
        let r1 = analyze(&b, &m).unwrap();
        let r2 = analyze(&b, &scaled).unwrap();
        prop_assert_eq!(r1.flags(), r2.flags());
        prop_assert_eq!(r1.strongly_compatible, r2.strongly_compatible);
    }

    #[test]
    fn document_round_trip(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = seeded(seed);
        let b = random_bialgebra(&mut rng, dim);
        let m = random_metric(&mut rng, dim);
        let doc = InputDocument::from_structures(&b, &m);
        let (b2, m2) = InputDocument::parse(&doc.to_json()).unwrap().build().unwrap();
        prop_assert_eq!(b2, b);
        prop_assert_eq!(m2, m);
    }

    #[test]
    fn heisenberg_condition_iff_verdict(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = seeded(seed);
        let j = random_heisenberg_j(&mut rng, n);
        let m = InnerProduct::euclidean(2 * n + 1);
        let b = heisenberg_build(n, &j, &m).unwrap();
        let verdict = analyze(&b, &m).unwrap().strongly_compatible == StrongCompatibility::Yes;
        prop_assert_eq!(heisenberg_condition(n, &j, &m).unwrap().holds, verdict);
    }

    #[test]
    fn triangular_iff_verdict(r in prop::collection::vec(-3i64..=3, 3)) {
        let l = su2();
        let m = InnerProduct::euclidean(3);
        let rv = MultiVector::from_terms(
            3, 2, Space::Primal,
            [(vec![0, 1], scalar::int(r[0])), (vec![0, 2], scalar::int(r[1])), (vec![1, 2], scalar::int(r[2]))],
        ).unwrap();
        let b = hawkins_core::hawkins::triangular_bialgebra(&l, &rv).unwrap();
        let verdict = analyze(&b, &m).unwrap().strongly_compatible == StrongCompatibility::Yes;
        prop_assert_eq!(triangular_analysis(&l, &m, &rv).unwrap(), verdict);
        prop_assert_eq!(verdict, r.iter().all(|&c| c == 0));
    }
}

#[test]
fn catalog_flat_iff_milnor_and_scaling() {
    for inst in catalog::instantiate_all().unwrap() {
        let b = &inst.bialgebra;
        if !b.dual().is_lie() {
            continue;
        }
        let md = inst.metric.dual();
        let flat = is_flat(&lc_product(b.dual(), &md).unwrap(), b.dual());
        assert_eq!(flat, milnor_check(b.dual(), &md).is_milnor, "{}", inst.label());
        let report = analyze(b, &inst.metric).unwrap();
        let scaled = analyze(b, &inst.metric.scaled(&scalar::frac(3, 2)).unwrap()).unwrap();
        assert_eq!(report.flags(), scaled.flags(), "{}", inst.label());
    }
}
