//! Cohomology, Chern classes and Riemann-Roch for bundles on the projective plane.
//!
//! All dimensions are exact integers of a caller-chosen [`ExactInt`] type; the
//! crate-level aliases use `BigInt`.

mod bundle;
mod parse;

pub use bundle::{BundleExpr, Summand};
pub use parse::{parse_bundle, parse_bundle_with};

use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("unsupported bundle `{node}`: {reason}")]
    Unsupported { node: String, reason: String },
    #[error("invalid bundle expression: {0}")]
    Invalid(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported rank {0}")]
    UnsupportedRank(u64),
}

/// `(h^0, h^1, h^2)` of a bundle on the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CohVector<N = i64> {
    pub h0: N,
    pub h1: N,
    pub h2: N,
}

impl<N: ExactInt> CohVector<N> {
    pub fn new(h0: N, h1: N, h2: N) -> Self {
        CohVector { h0, h1, h2 }
    }

    pub fn from_ints(h0: i64, h1: i64, h2: i64) -> Self {
        CohVector::new(N::from_int(h0), N::from_int(h1), N::from_int(h2))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn euler_characteristic(&self) -> N {
        self.h0.clone() - self.h1.clone() + self.h2.clone()
    }

    pub fn get(&self, q: usize) -> N {
        match q {
            0 => self.h0.clone(),
            1 => self.h1.clone(),
            2 => self.h2.clone(),
            _ => N::zero(),
        }
    }

    pub fn as_array(&self) -> [N; 3] {
        [self.h0.clone(), self.h1.clone(), self.h2.clone()]
    }
}

impl<N: ExactInt> Add for CohVector<N> {
    type Output = CohVector<N>;
    fn add(self, rhs: Self) -> Self {
        CohVector::new(self.h0 + rhs.h0, self.h1 + rhs.h1, self.h2 + rhs.h2)
    }
}

impl<N: std::fmt::Display> std::fmt::Display for CohVector<N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.h0, self.h1, self.h2)
    }
}

/// Rank and first two Chern classes (as integers, multiples of the hyperplane class).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChernPair<N = i64> {
    pub rank: u64,
    pub c1: N,
    pub c2: N,
}

impl<N: ExactInt> ChernPair<N> {
    pub fn new(rank: u64, c1: N, c2: N) -> Self {
        ChernPair { rank, c1, c2 }
    }

    pub fn from_ints(rank: u64, c1: i64, c2: i64) -> Self {
        ChernPair::new(rank, N::from_int(c1), N::from_int(c2))
    }

    /// Whitney sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        ChernPair {
            rank: self.rank + other.rank,
            c1: self.c1.clone() + other.c1.clone(),
            c2: self.c2.clone() + other.c2.clone() + self.c1.clone() * other.c1.clone(),
        }
    }
}

fn h0_line<N: ExactInt>(k: i64) -> N {
    if k < 0 {
        N::zero()
    } else {
        N::from_int(k + 1) * N::from_int(k + 2) / N::from_int(2)
    }
}

/// Cohomology of `O(k)`.
pub fn coh_line<N: ExactInt>(k: i64) -> CohVector<N> {
    CohVector::new(h0_line(k), N::zero(), h0_line(-k - 3))
}

/// Cohomology of `Omega^1(k)`, by the closed-form case split.
pub fn coh_cotangent_twist<N: ExactInt>(k: i64) -> CohVector<N> {
    let k2m1 = N::from_int(k) * N::from_int(k) - N::one();
    match k {
        k if k >= 1 => CohVector::new(k2m1, N::zero(), N::zero()),
        0 => CohVector::from_ints(0, 1, 0),
        -1 => CohVector::zero(),
        _ => CohVector::new(N::zero(), N::zero(), k2m1),
    }
}

fn coh_summand<N: ExactInt>(s: Summand) -> CohVector<N> {
    match s {
        Summand::Line(k) => coh_line(k),
        Summand::Omega(k) => coh_cotangent_twist(k),
    }
}

fn chern_summand<N: ExactInt>(s: Summand) -> ChernPair<N> {
    match s {
        Summand::Line(k) => ChernPair::new(1, N::from_int(k), N::zero()),
        Summand::Omega(k) => twist_chern(&ChernPair::from_ints(2, -3, 3), k),
    }
}

/// Cohomology of any supported expression, additive over summands.
pub fn coh<N: ExactInt>(e: &BundleExpr) -> Result<CohVector<N>, SheafError> {
    Ok(e
        .normalize()?
        .into_iter()
        .map(coh_summand)
        .fold(CohVector::zero(), |a, b| a + b))
}

/// Chern data of a supported expression via the Whitney formula.
pub fn chern<N: ExactInt>(e: &BundleExpr) -> Result<ChernPair<N>, SheafError> {
    let parts = e.normalize()?;
    let mut acc = ChernPair::new(0, N::zero(), N::zero());
    for s in parts {
        acc = acc.direct_sum(&chern_summand(s));
    }
    Ok(acc)
}

/// Euler characteristic from Chern data: `chi = r + c1(c1 + 3)/2 - c2`.
///
/// For rank one this is `1 + k(k+3)/2`, for rank two `2 + c1(c1+3)/2 - c2`.
pub fn riemann_roch<N: ExactInt>(c: &ChernPair<N>) -> Result<N, SheafError> {
    if c.rank == 0 {
        return Err(SheafError::UnsupportedRank(0));
    }
    let r = N::from_int(c.rank as i64);
    let half = c.c1.clone() * (c.c1.clone() + N::from_int(3)) / N::from_int(2);
    Ok(r + half - c.c2.clone())
}

/// Chern data of `E(k)`.
///
/// Rank `r`: `c1 + r k`, `c2 + (r-1) k c1 + C(r,2) k^2`.
pub fn twist_chern<N: ExactInt>(c: &ChernPair<N>, k: i64) -> ChernPair<N> {
    let r = c.rank as i64;
    let k_n = N::from_int(k);
    ChernPair {
        rank: c.rank,
        c1: c.c1.clone() + N::from_int(r) * k_n.clone(),
        c2: c.c2.clone()
            + N::from_int(r - 1) * k_n.clone() * c.c1.clone()
            + N::from_int(r * (r - 1) / 2) * k_n.clone() * k_n,
    }
}

/// Degrees of `O(t) tensor Sym^6 (O(a) + O(b))^*`.
///
/// Entry `i` pairs `i` copies of the dual of `O(b)` with `6 - i` copies of the
/// dual of `O(a)`, so `i = 0` is the coefficient `s_0` of `z^0`.
pub fn sym6_dual_twist(a: i64, b: i64, t: i64) -> [i64; 7] {
    std::array::from_fn(|i| {
        let i = i as i64;
        t - (6 - i) * a - i * b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type C = CohVector<i64>;

    #[test]
    fn line_examples() {
        assert_eq!(coh_line::<i64>(0), C::from_ints(1, 0, 0));
        assert_eq!(coh_line::<i64>(-3), C::from_ints(0, 0, 1));
        assert_eq!(coh_line::<i64>(6), C::from_ints(28, 0, 0));
        assert_eq!(coh_line::<i64>(-1), C::from_ints(0, 0, 0));
    }

    #[test]
    fn cotangent_examples() {
        assert_eq!(coh_cotangent_twist::<i64>(0), C::from_ints(0, 1, 0));
        assert_eq!(coh_cotangent_twist::<i64>(1), C::from_ints(0, 0, 0));
        assert_eq!(coh_cotangent_twist::<i64>(3), C::from_ints(8, 0, 0));
    }

    #[test]
    fn cotangent_chi_is_k_squared_minus_one() {
        for k in -12..=12 {
            assert_eq!(coh_cotangent_twist::<i64>(k).euler_characteristic(), k * k - 1);
        }
    }

    #[test]
    fn chern_examples() {
        assert_eq!(chern::<i64>(&BundleExpr::split(-1, -2)).unwrap(), ChernPair::from_ints(2, -3, 2));
        assert_eq!(chern::<i64>(&BundleExpr::split(0, -3)).unwrap(), ChernPair::from_ints(2, -3, 0));
        assert_eq!(chern::<i64>(&BundleExpr::Cotangent).unwrap(), ChernPair::from_ints(2, -3, 3));
        assert_eq!(chern::<i64>(&BundleExpr::Tangent).unwrap(), ChernPair::from_ints(2, 3, 3));
    }

    #[test]
    fn chern_rejects_unsupported_node() {
        let e = BundleExpr::Cotangent.sym(2);
        assert!(matches!(chern::<i64>(&e), Err(SheafError::Unsupported { .. })));
        assert!(matches!(coh::<i64>(&e), Err(SheafError::Unsupported { .. })));
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(riemann_roch(&ChernPair::<i64>::from_ints(2, -3, 0)).unwrap(), 2);
        assert_eq!(riemann_roch(&ChernPair::<i64>::from_ints(2, -3, 2)).unwrap(), 0);
        assert_eq!(riemann_roch(&ChernPair::<i64>::from_ints(2, 0, 0)).unwrap(), 2);
        assert_eq!(riemann_roch(&ChernPair::<i64>::from_ints(1, 6, 0)).unwrap(), 28);
        assert!(riemann_roch(&ChernPair::<i64>::from_ints(0, 0, 0)).is_err());
    }

    #[test]
    fn twist_examples() {
        let c = ChernPair::<i64>::from_ints(2, -3, 0);
        assert_eq!(twist_chern(&c, 0), c);
        let c1 = twist_chern(&c, 1);
        assert_eq!(c1, ChernPair::from_ints(2, -1, -2));
        assert_eq!(riemann_roch(&c1).unwrap(), 2 + (-3) + 4);
        let d = ChernPair::<i64>::from_ints(2, -3, 2);
        let d1 = twist_chern(&d, 1);
        assert_eq!(d1, ChernPair::from_ints(2, -1, 0));
        assert_eq!(riemann_roch(&d1).unwrap(), 1);
    }

    #[test]
    fn coh_examples() {
        assert_eq!(coh::<i64>(&BundleExpr::split(0, -3)).unwrap(), C::from_ints(1, 0, 1));
        assert_eq!(coh::<i64>(&BundleExpr::split(-1, -2)).unwrap(), C::from_ints(0, 0, 0));
        assert_eq!(coh::<i64>(&BundleExpr::Cotangent).unwrap(), C::from_ints(0, 1, 0));
    }

    #[test]
    fn sym6_examples() {
        assert_eq!(sym6_dual_twist(0, -3, -6), [-6, -3, 0, 3, 6, 9, 12]);
        let mut cy = sym6_dual_twist(-1, -2, -6).to_vec();
        assert_eq!(cy, vec![0, 1, 2, 3, 4, 5, 6]);
        cy.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(cy, vec![6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(sym6_dual_twist(0, 0, 0), [0; 7]);
    }

    #[test]
    fn sym6_agrees_with_normalized_expression() {
        let e = BundleExpr::split(0, -3).dual().sym(6).twist(-6);
        let mut from_expr: Vec<i64> = e
            .normalize()
            .unwrap()
            .into_iter()
            .map(|s| match s {
                Summand::Line(d) => d,
                Summand::Omega(_) => unreachable!(),
            })
            .collect();
        from_expr.sort_unstable();
        assert_eq!(from_expr, sym6_dual_twist(0, -3, -6).to_vec());
    }

    #[test]
    fn big_integer_dimensions() {
        let big: CohVector<BigInt> = coh_line(3_000_000_000);
        let expected = BigInt::from(3_000_000_001u64) * BigInt::from(3_000_000_002u64) / 2;
        assert_eq!(big.h0, expected);
    }
}
