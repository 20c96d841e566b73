//! Hodge numbers `h^k(O_X)` of a fibration over the plane from its direct
//! images, assuming the Leray spectral sequence degenerates at `E_2`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::ExactInt;
use crate::sheafcalc::{coh, BundleExpr, CohVector, SheafError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LerayError {
    #[error("R^{index} has rank {found}, expected {expected}")]
    Rank { index: usize, found: u64, expected: u64 },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// The three direct images `R^0, R^1, R^2` of the structure sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectImageData {
    r: [BundleExpr; 3],
}

impl DirectImageData {
    pub fn new(r0: BundleExpr, r1: BundleExpr, r2: BundleExpr) -> Result<Self, LerayError> {
        for (index, (e, expected)) in [(&r0, 1), (&r1, 2), (&r2, 1)].into_iter().enumerate() {
            e.validate()?;
            let found = e.rank();
            if found != expected {
                return Err(LerayError::Rank { index, found, expected });
            }
        }
        Ok(DirectImageData { r: [r0, r1, r2] })
    }

    /// `R^0 = O`, `R^2 = O(-3)` and the given rank-two middle term.
    pub fn with_middle(r1: BundleExpr) -> Result<Self, LerayError> {
        Self::new(BundleExpr::Line(0), r1, BundleExpr::Line(-3))
    }

    pub fn get(&self, p: usize) -> &BundleExpr {
        &self.r[p]
    }
}

/// `h^k(X, O_X)` for `k = 0..=4`: `h^k = sum_{p+q=k} h^q(R^p)`.
pub fn total_coh<N: ExactInt>(d: &DirectImageData) -> Result<[N; 5], LerayError> {
    let cohs: Vec<CohVector<N>> = d.r.iter().map(coh).collect::<Result<_, _>>()?;
    let mut out: [N; 5] = std::array::from_fn(|_| N::zero());
    for (p, c) in cohs.iter().enumerate() {
        for q in 0..3 {
            out[p + q] = out[p + q].clone() + c.get(q);
        }
    }
    Ok(out)
}

/// `(h^1, h^2, h^3)`, the slice written as a triple in the classification.
pub fn middle_slice<N: Clone>(totals: &[N; 5]) -> [N; 3] {
    [totals[1].clone(), totals[2].clone(), totals[3].clone()]
}

/// Degrees `k` with `h^2(O(k))` equal to a target value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DegreeSet {
    Finite(BTreeSet<i64>),
    /// Every `k >= bound`.
    AtLeast(i64),
}

impl DegreeSet {
    pub fn contains(&self, k: i64) -> bool {
        match self {
            DegreeSet::Finite(s) => s.contains(&k),
            DegreeSet::AtLeast(b) => k >= *b,
        }
    }
}

/// Solve `h^2(P^2, O(k)) = target` for the line bundle `R^2`.
///
/// `h^2(O(k)) = h^0(O(-k-3)) = (m+1)(m+2)/2` with `m = -k-3 >= 0`, a strictly
/// increasing function of `m`, so a positive target has at most one solution.
pub fn solve_r2(target: u64) -> DegreeSet {
    if target == 0 {
        return DegreeSet::AtLeast(-2);
    }
    let mut set = BTreeSet::new();
    let mut m: u64 = 0;
    loop {
        let h = (m + 1) * (m + 2) / 2;
        if h == target {
            set.insert(-(m as i64) - 3);
        }
        if h >= target {
            break;
        }
        m += 1;
    }
    DegreeSet::Finite(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheafcalc::coh_line;

    fn totals(r1: BundleExpr) -> [i64; 5] {
        total_coh(&DirectImageData::with_middle(r1).unwrap()).unwrap()
    }

    #[test]
    fn totals_for_the_three_fibration_types() {
        assert_eq!(totals(BundleExpr::split(0, -3)), [1, 1, 0, 1, 1]);
        assert_eq!(totals(BundleExpr::split(-1, -2)), [1, 0, 0, 0, 1]);
        assert_eq!(totals(BundleExpr::Cotangent), [1, 0, 1, 0, 1]);
    }

    #[test]
    fn split_case_total_by_independent_summation() {
        // h^{p+q} collected by hand from coh(O), coh(O + O(-3)), coh(O(-3))
        let r0 = coh_line::<i64>(0);
        let r1 = coh_line::<i64>(0) + coh_line::<i64>(-3);
        let r2 = coh_line::<i64>(-3);
        let expected = [
            r0.h0,
            r0.h1 + r1.h0,
            r0.h2 + r1.h1 + r2.h0,
            r1.h2 + r2.h1,
            r2.h2,
        ];
        assert_eq!(totals(BundleExpr::split(0, -3)), expected);
        assert_eq!(middle_slice(&expected), [1, 0, 1]);
    }

    #[test]
    fn h3_equals_h1_for_the_classified_cases() {
        for r1 in [BundleExpr::split(0, -3), BundleExpr::split(-1, -2), BundleExpr::Cotangent] {
            let t = totals(r1);
            assert_eq!(t[3], t[1]);
        }
    }

    #[test]
    fn trivial_middle_term() {
        assert_eq!(totals(BundleExpr::split(0, 0))[1], 2);
    }

    #[test]
    fn rank_checked() {
        let err = DirectImageData::with_middle(BundleExpr::Line(0)).unwrap_err();
        assert_eq!(err, LerayError::Rank { index: 1, found: 1, expected: 2 });
        assert!(DirectImageData::new(BundleExpr::split(0, 0), BundleExpr::Cotangent, BundleExpr::Line(-3)).is_err());
    }

    #[test]
    fn unsupported_bundle_propagates() {
        let d = DirectImageData::with_middle(BundleExpr::Cotangent.sym(1)).unwrap();
        assert!(matches!(total_coh::<i64>(&d), Err(LerayError::Sheaf(_))));
    }

    #[test]
    fn r2_solutions() {
        assert_eq!(solve_r2(1), DegreeSet::Finite([-3].into()));
        assert_eq!(solve_r2(3), DegreeSet::Finite([-4].into()));
        assert_eq!(solve_r2(0), DegreeSet::AtLeast(-2));
        assert_eq!(solve_r2(2), DegreeSet::Finite(BTreeSet::new()));
    }

    #[test]
    fn r2_solutions_match_brute_force_window() {
        for target in 0..40u64 {
            let sol = solve_r2(target);
            for k in -60..=60 {
                let h2 = coh_line::<i64>(k).h2 as u64;
                assert_eq!(sol.contains(k), h2 == target, "target {target}, k {k}");
            }
        }
    }
}
