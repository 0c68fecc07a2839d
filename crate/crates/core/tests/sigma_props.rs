use num_rational::BigRational;
use proptest::prelude::*;

use subspace_lab::sigma::{
    increases_to_bound, interval, lambda_sequence, lambda_sequence_exact, sigma_membership, SigmaBranch, SigmaSet,
    Variant,
};
use subspace_lab::verify::{SIGMA_DEPTH, SIGMA_TOL};

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Zero), Just(Variant::One)]
}

proptest! {
    #[test]
    fn sequences_increase_below_the_interval(n in 5usize..16, v in variant(), depth in 1usize..=SIGMA_DEPTH) {
        let seq = lambda_sequence_exact(n, v, depth).unwrap();
        prop_assert_eq!(seq.len(), depth);
        prop_assert!(seq[0] == BigRational::from_integer(0.into()));
        prop_assert!(increases_to_bound(n, &seq));
    }

    #[test]
    fn every_listed_value_is_mirrored(n in 1usize..12, depth in 1usize..12) {
        let set = SigmaSet::compute(n, depth).unwrap();
        let listed: Vec<f64> = set
            .values
            .iter()
            .flatten()
            .chain(&set.lambda0)
            .chain(&set.lambda1)
            .copied()
            .collect();
        for x in listed {
            prop_assert!(sigma_membership(n, x, depth, SIGMA_TOL).unwrap().member);
            prop_assert!(sigma_membership(n, n as f64 - x, depth, SIGMA_TOL).unwrap().member, "n={} x={}", n, x);
        }
    }

    #[test]
    fn the_interval_is_inside(n in 4usize..20, t in 0.0f64..=1.0) {
        let (lo, hi) = interval(n).unwrap();
        let alpha = lo + t * (hi - lo);
        let m = sigma_membership(n, alpha, 5, SIGMA_TOL).unwrap();
        prop_assert!(m.member);
        prop_assert!(n as f64 - alpha >= lo - 1e-12 && n as f64 - alpha <= hi + 1e-12);
    }

    #[test]
    fn outside_zero_to_n_is_never_a_member(n in 1usize..12, over in 1e-6f64..5.0) {
        prop_assert!(!sigma_membership(n, -over, 10, SIGMA_TOL).unwrap().member);
        prop_assert!(!sigma_membership(n, n as f64 + over, 10, SIGMA_TOL).unwrap().member);
    }
}

#[test]
fn small_spectra_are_exact() {
    let sets = [
        (1, vec![0.0, 1.0]),
        (2, vec![0.0, 1.0, 2.0]),
        (3, vec![0.0, 1.0, 1.5, 2.0, 3.0]),
    ];
    for (n, want) in sets {
        assert_eq!(SigmaSet::compute(n, 10).unwrap().values.unwrap(), want);
    }
    assert!(!sigma_membership(3, 1.25, 10, SIGMA_TOL).unwrap().member);
}

#[test]
fn n_four_branches() {
    assert_eq!(
        lambda_sequence(4, Variant::One, 4).unwrap(),
        vec![0.0, 1.5, 5.0 / 3.0, 1.75]
    );
    assert_eq!(lambda_sequence(4, Variant::Zero, 3).unwrap(), vec![0.0, 4.0 / 3.0, 1.6]);
    let m = sigma_membership(4, 2.0, 10, SIGMA_TOL).unwrap();
    assert_eq!(m.witness, Some(SigmaBranch::Interval));
    let m = sigma_membership(4, 2.25, 10, SIGMA_TOL).unwrap();
    assert_eq!(m.witness, Some(SigmaBranch::Mirror1(3)));
}

#[test]
fn gaps_between_sequence_terms_are_excluded() {
    let l0 = lambda_sequence(5, Variant::Zero, 4).unwrap();
    let l1 = lambda_sequence(5, Variant::One, 4).unwrap();
    let mut all: Vec<f64> = l0.iter().chain(&l1).copied().collect();
    all.sort_by(f64::total_cmp);
    for w in all.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if w[1] - w[0] > 1e-6 {
            assert!(!sigma_membership(5, mid, 12, SIGMA_TOL).unwrap().member, "{mid}");
        }
    }
}
