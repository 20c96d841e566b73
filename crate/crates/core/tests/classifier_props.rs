use fibcheck_core::classifier::{
    classify, inequality_verdict, split_candidates, HolonomyId, Outcome, Triple,
};
use fibcheck_core::sheafcalc::{chern, coh, riemann_roch, BundleExpr, CohVector};
use proptest::prelude::*;

/// Split pairs with the given cohomology, by scanning a wide square.
fn brute_force(t: &Triple, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in -60..=60i64 {
        for b in -60..=a {
            let c1 = a + b;
            if c1 < lo || c1 > hi {
                continue;
            }
            let h: CohVector<i64> = coh(&BundleExpr::split(a, b)).unwrap();
            if h == *t {
                out.push((a, b));
            }
        }
    }
    out.sort_by_key(|&(a, b)| (-(a + b), -a));
    out
}

#[test]
fn forced_bundles_in_default_window() {
    let w = (-30, 0);
    assert_eq!(split_candidates(&Triple::from_ints(1, 0, 1), w), vec![(0, -3)]);
    let under_bound: Vec<_> = split_candidates(&Triple::from_ints(0, 0, 0), w)
        .into_iter()
        .filter(|(a, b)| a + b <= -3)
        .collect();
    assert_eq!(under_bound, vec![(-1, -2), (-2, -2)]);
}

#[test]
fn every_forced_split_is_riemann_roch_consistent() {
    for h in HolonomyId::ALL {
        for (t, v) in classify(h) {
            if let Outcome::ForcedSplit(cands) = &v.outcome {
                for c in cands {
                    let chi = riemann_roch(&chern::<i64>(&BundleExpr::split(c.a, c.b)).unwrap())
                        .unwrap();
                    assert_eq!(chi, t.euler_characteristic(), "{h} {t}");
                }
            }
        }
    }
}

#[test]
fn impossible_verdicts_are_witnessed() {
    for h in HolonomyId::ALL {
        for (t, v) in classify(h) {
            if v.outcome == Outcome::Impossible {
                assert!(v.is_witnessed(), "{h} {t}");
                assert!(v.checks_hold(), "{h} {t}");
            }
        }
    }
}

proptest! {
    #[test]
    fn enumeration_is_complete(h0 in 0i64..40, h2 in 0i64..40) {
        let t = Triple::from_ints(h0, 0, h2);
        let chi = h0 + h2;
        let (lo, hi) = (-chi - 4, -3);
        prop_assert_eq!(split_candidates(&t, (lo, hi)), brute_force(&t, lo, hi));
        prop_assert_eq!(split_candidates(&t, (lo - 7, hi + 5)), brute_force(&t, lo - 7, hi + 5));
    }

    #[test]
    fn split_triples_are_found_again(a in -20i64..20, d in 0i64..20) {
        let b = a - d;
        let t: Triple = coh(&BundleExpr::split(a, b)).unwrap();
        prop_assert!(split_candidates(&t, (a + b, a + b)).contains(&(a, b)));
    }

    #[test]
    fn inequality_depends_only_on_chi(h0 in 0i64..10, h1 in 0i64..10, h2 in 0i64..10, shift in 0i64..5) {
        let t = Triple::from_ints(h0, h1, h2);
        let u = Triple::from_ints(h0 + shift, h1 + shift, h2);
        let (vt, vu) = (inequality_verdict(&t), inequality_verdict(&u));
        prop_assert_eq!(vt.outcome == Outcome::Impossible, vu.outcome == Outcome::Impossible);
        prop_assert_eq!(vt.outcome, vu.outcome);
    }
}
