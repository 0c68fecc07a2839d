use proptest::prelude::*;

use subspace_lab::endo;
use subspace_lab::functors::{apply_word, functor_s, functor_t, FunctorWord, Letter};
use subspace_lab::linalg;
use subspace_lab::reps::{build_rep, enumerate_reps, OmegaPoint, RepFamilyId};
use subspace_lab::subspace::system_from_projections;
use subspace_lab::verify::{IDENTITY_TOL, INVOLUTION_TOL};
use subspace_lab::{ProjectionTuple, TolerancePolicy};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn s200(theta: f64, phi: f64) -> ProjectionTuple {
    let p = OmegaPoint::from_angles(theta, phi);
    build_rep(&RepFamilyId::s200(p), &tol()).unwrap()
}

fn same_tuple(a: &ProjectionTuple, b: &ProjectionTuple, eps: f64) -> bool {
    a.dim() == b.dim()
        && a.projections()
            .iter()
            .zip(b.projections())
            .all(|(p, q)| linalg::distance(p, q) <= eps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_is_an_involution(theta in 0.05f64..3.09, phi in 0.05f64..1.52) {
        let t = s200(theta, phi);
        let tt = functor_t(&functor_t(&t, &tol()).unwrap(), &tol()).unwrap();
        prop_assert!(same_tuple(&t, &tt, INVOLUTION_TOL));
    }

    #[test]
    fn t_reflects_alpha(theta in 0.05f64..3.09, phi in 0.05f64..1.52) {
        let t = s200(theta, phi);
        let r = functor_t(&t, &tol()).unwrap();
        prop_assert!((r.alpha().unwrap() - (4.0 - t.alpha().unwrap())).abs() < 1e-9);
        prop_assert_eq!(r.dim(), t.dim());
    }

    #[test]
    fn s_witness_identities_hold(theta in 0.05f64..3.09, phi in 0.05f64..1.52) {
        let t = s200(theta, phi);
        let (out, w) = functor_s(&t, &tol()).unwrap();
        prop_assert!(w.residuals().max() < IDENTITY_TOL);
        let alpha = t.alpha().unwrap();
        prop_assert!((out.alpha().unwrap() - alpha / (alpha - 1.0)).abs() < 1e-9);
        prop_assert_eq!(out.dim(), t.ranks().iter().sum::<usize>() - t.dim());
        prop_assert!(endo::is_irreducible(&out, &tol()));
        let images = system_from_projections(&out, &tol()).unwrap();
        prop_assert!(endo::is_transitive(&images, &tol()));
    }

    #[test]
    fn word_trace_follows_the_letters(theta in 0.05f64..3.09, phi in 0.05f64..1.52) {
        let t = s200(theta, phi);
        let word: FunctorWord = "TSTS".parse().unwrap();
        let res = apply_word(&t, &word, &tol()).unwrap();
        prop_assert_eq!(res.trace.len(), 5);
        prop_assert!(res.trace[0].letter.is_none());
        let mut alpha = t.alpha().unwrap();
        for (step, letter) in res.trace[1..].iter().zip(&word.letters) {
            alpha = match letter {
                Letter::T => 4.0 - alpha,
                Letter::S => alpha / (alpha - 1.0),
            };
            prop_assert!((step.alpha.unwrap() - alpha).abs() < 1e-9);
        }
    }
}

#[test]
fn families_stay_irreducible_under_both_functors() {
    for id in enumerate_reps(7, &[]) {
        let t = build_rep(&id, &tol()).unwrap();
        let r = functor_t(&t, &tol()).unwrap();
        assert!(endo::is_irreducible(&r, &tol()), "T {}", id.name());
        if t.alpha().unwrap() > 1.0 + 1e-9 {
            let (s, w) = functor_s(&t, &tol()).unwrap();
            assert!(w.residuals().max() < IDENTITY_TOL, "{}", id.name());
            if s.dim() > 0 {
                assert!(endo::is_irreducible(&s, &tol()), "S {}", id.name());
            }
        }
    }
}

#[test]
fn words_parse_and_print() {
    let w: FunctorWord = "tSsT".parse().unwrap();
    assert_eq!(w.to_string(), "TSST");
    assert!("TXS".parse::<FunctorWord>().is_err());
    assert_eq!("".parse::<FunctorWord>().unwrap(), FunctorWord::default());
}

#[test]
fn s_rejects_alpha_at_most_one() {
    let t = subspace_lab::functors::unit_tuple(4, &tol()).unwrap();
    assert!(matches!(functor_s(&t, &tol()), Err(subspace_lab::Error::Domain(_))));
}
