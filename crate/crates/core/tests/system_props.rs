use proptest::prelude::*;

use subspace_lab::endo;
use subspace_lab::iso::gaussian_c64;
use subspace_lab::linalg::{self, c, ComplexMatrix};
use subspace_lab::subspace::{apply_permutation, direct_sum, orthocomplement, projections_from_system};
use subspace_lab::triple::{decompose_triple, end_dim_formula, small_catalogue};
use subspace_lab::verify::{case_rng, random_system};
use subspace_lab::{ProjectionTuple, SubspaceSystem, TolerancePolicy};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

/// Local endomorphism algebras have a generic element `μI + nilpotent`.
fn generic_element_is_local(s: &SubspaceSystem, seed: u64) -> bool {
    let end = endo::end_space(s, &tol());
    let mut rng = case_rng(seed, 210, 0);
    let coeffs: Vec<_> = (0..end.dim()).map(|_| gaussian_c64(&mut rng)).collect();
    let e = end.combine(&coeffs);
    let d = s.ambient_dim();
    let mu = linalg::trace(&e) / c(d as f64, 0.0);
    let shifted = &e - linalg::identity(d) * mu;
    let power = (1..d).fold(shifted.clone(), |acc, _| &acc * &shifted);
    linalg::max_abs(&power) < 1e-8 * linalg::max_abs(&shifted).max(1.0).powi(d as i32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn triple_formula_matches_direct_solve(seed in any::<u64>(), u in 1usize..8) {
        let s = random_system(&mut case_rng(seed, 211, u), u, 3, &tol());
        let d = decompose_triple(&s, &tol()).unwrap();
        prop_assert!(d.bookkeeping_holds());
        prop_assert_eq!(end_dim_formula(&d), endo::end_dimension(&s, &tol()));
    }

    #[test]
    fn end_is_unchanged_by_orthocomplement(seed in any::<u64>(), u in 1usize..6, n in 1usize..6) {
        let s = random_system(&mut case_rng(seed, 212, u), u, n, &tol());
        let perp = orthocomplement(&s, &tol());
        prop_assert_eq!(endo::end_dimension(&s, &tol()), endo::end_dimension(&perp, &tol()));
    }

    #[test]
    fn end_is_invariant_under_relabelling(seed in any::<u64>(), u in 1usize..6) {
        let s = random_system(&mut case_rng(seed, 213, u), u, 4, &tol());
        let sigma = [2, 0, 3, 1];
        let t = apply_permutation(&s, &sigma).unwrap();
        prop_assert_eq!(endo::end_dimension(&s, &tol()), endo::end_dimension(&t, &tol()));
    }

    #[test]
    fn end_is_invariant_under_change_of_basis(seed in any::<u64>(), u in 1usize..6) {
        let mut rng = case_rng(seed, 214, u);
        let s = random_system(&mut rng, u, 4, &tol());
        let g = ComplexMatrix::from_fn(u, u, |_, _| gaussian_c64(&mut rng)) + linalg::identity(u) * c(2.0, 0.0);
        let moved = SubspaceSystem::new(
            u,
            s.subspaces().iter().map(|h| subspace_lab::Subspace::span_of_columns(&(&g * h.basis()), &tol())).collect(),
        ).unwrap();
        prop_assert_eq!(moved.dims(), s.dims());
        prop_assert_eq!(endo::end_dimension(&s, &tol()), endo::end_dimension(&moved, &tol()));
    }

    #[test]
    fn direct_sums_are_decomposable(seed in any::<u64>(), u in 1usize..4, v in 1usize..4) {
        let mut rng = case_rng(seed, 215, u * 8 + v);
        let a = random_system(&mut rng, u, 3, &tol());
        let b = random_system(&mut rng, v, 3, &tol());
        let sum = direct_sum(&a, &b).unwrap();
        let (ea, eb) = (endo::end_dimension(&a, &tol()), endo::end_dimension(&b, &tol()));
        prop_assert!(endo::end_dimension(&sum, &tol()) >= ea + eb);
        prop_assert!(!endo::is_indecomposable(&sum, &tol()));
    }

    #[test]
    fn system_json_round_trips(seed in any::<u64>(), u in 0usize..6, n in 1usize..5) {
        let s = random_system(&mut case_rng(seed, 216, u), u, n, &tol());
        let back = SubspaceSystem::from_json(&s.to_json(), &tol()).unwrap();
        prop_assert_eq!(back.dims(), s.dims());
        for (x, y) in s.subspaces().iter().zip(back.subspaces()) {
            prop_assert!(x.same_as(y, &tol()));
        }
    }

    #[test]
    fn tuple_json_round_trips(seed in any::<u64>(), u in 1usize..6, n in 1usize..5) {
        let s = random_system(&mut case_rng(seed, 217, u), u, n, &tol());
        let t = projections_from_system(&s, &tol());
        let back = ProjectionTuple::from_json(&t.to_json(), &tol()).unwrap();
        prop_assert_eq!(back.ranks(), t.ranks());
        for (p, q) in t.projections().iter().zip(back.projections()) {
            prop_assert!(linalg::distance(p, q) < 1e-12);
        }
    }
}

#[test]
fn indecomposability_agrees_with_the_generic_element_test() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let u = 1 + (seed as usize) % 4;
        let s = random_system(&mut case_rng(seed, 218, 0), u, 3, &tol());
        let s = if seed % 3 == 0 {
            let extra = random_system(&mut case_rng(seed, 218, 1), 1, 3, &tol());
            direct_sum(&s, &extra).unwrap()
        } else {
            s
        };
        assert_eq!(
            endo::is_indecomposable(&s, &tol()),
            generic_element_is_local(&s, seed),
            "seed {seed}, dims {:?}",
            s.dims()
        );
        checked += 1;
    }
    for n in 1..=3 {
        for (label, s) in small_catalogue(n, &tol()).unwrap() {
            assert!(generic_element_is_local(&s, 1), "{label}");
        }
    }
    assert_eq!(checked, 60);
}
