use std::fmt;

use super::SheafError;

/// A vector bundle on the projective plane written as a formal expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// `O(k)`
    Line(i64),
    /// The cotangent bundle `Omega^1`.
    Cotangent,
    /// The tangent bundle `T`.
    Tangent,
    DirectSum(Vec<BundleExpr>),
    /// Tensor with `O(k)`.
    TwistBy(Box<BundleExpr>, i64),
    /// `n`-th symmetric power, `n >= 1`.
    Sym(Box<BundleExpr>, u32),
    Dual(Box<BundleExpr>),
    Det(Box<BundleExpr>),
}

/// Indecomposable piece of a normalized bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    /// `O(k)`
    Line(i64),
    /// `Omega^1(k)`
    Omega(i64),
}

impl Summand {
    pub fn rank(self) -> u32 {
        match self {
            Summand::Line(_) => 1,
            Summand::Omega(_) => 2,
        }
    }

    fn twist(self, k: i64) -> Summand {
        match self {
            Summand::Line(d) => Summand::Line(d + k),
            Summand::Omega(d) => Summand::Omega(d + k),
        }
    }

    fn dual(self) -> Summand {
        match self {
            Summand::Line(d) => Summand::Line(-d),
            // Omega^1(k)^* = T(-k) = Omega^1(3 - k)
            Summand::Omega(d) => Summand::Omega(3 - d),
        }
    }

    fn first_chern(self) -> i64 {
        match self {
            Summand::Line(d) => d,
            Summand::Omega(d) => 2 * d - 3,
        }
    }
}

impl BundleExpr {
    pub fn line(k: i64) -> Self {
        BundleExpr::Line(k)
    }

    /// `O(a) + O(b)`.
    pub fn split(a: i64, b: i64) -> Self {
        BundleExpr::DirectSum(vec![BundleExpr::Line(a), BundleExpr::Line(b)])
    }

    pub fn twist(self, k: i64) -> Self {
        BundleExpr::TwistBy(Box::new(self), k)
    }

    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn sym(self, n: u32) -> Self {
        BundleExpr::Sym(Box::new(self), n)
    }

    pub fn det(self) -> Self {
        BundleExpr::Det(Box::new(self))
    }

    pub fn rank(&self) -> u64 {
        match self {
            BundleExpr::Line(_) | BundleExpr::Det(_) => 1,
            BundleExpr::Cotangent | BundleExpr::Tangent => 2,
            BundleExpr::DirectSum(parts) => parts.iter().map(BundleExpr::rank).sum(),
            BundleExpr::TwistBy(e, _) | BundleExpr::Dual(e) => e.rank(),
            BundleExpr::Sym(e, n) => {
                let r = e.rank();
                crate::scalar::binomial::<i64>((r + *n as u64 - 1) as i64, *n as i64) as u64
            }
        }
    }

    /// Structural checks: sums have at least two summands, symmetric powers are positive.
    pub fn validate(&self) -> Result<(), SheafError> {
        match self {
            BundleExpr::Line(_) | BundleExpr::Cotangent | BundleExpr::Tangent => Ok(()),
            BundleExpr::DirectSum(parts) => {
                if parts.len() < 2 {
                    return Err(SheafError::Invalid(format!(
                        "direct sum needs at least two summands: {self}"
                    )));
                }
                parts.iter().try_for_each(BundleExpr::validate)
            }
            BundleExpr::Sym(e, n) => {
                if *n == 0 {
                    return Err(SheafError::Invalid(format!("Sym0 is not allowed: {self}")));
                }
                e.validate()
            }
            BundleExpr::TwistBy(e, _) | BundleExpr::Dual(e) | BundleExpr::Det(e) => e.validate(),
        }
    }

    /// Rewrites the expression as a direct sum of line bundles and twisted
    /// cotangent bundles.
    ///
    /// Shapes outside that fragment (a symmetric power of a non-split bundle)
    /// are rejected with the offending node.
    pub fn normalize(&self) -> Result<Vec<Summand>, SheafError> {
        self.validate()?;
        self.normalize_inner()
    }

    fn normalize_inner(&self) -> Result<Vec<Summand>, SheafError> {
        Ok(match self {
            BundleExpr::Line(k) => vec![Summand::Line(*k)],
            BundleExpr::Cotangent => vec![Summand::Omega(0)],
            // T = Omega^1 tensor det(T) = Omega^1(3)
            BundleExpr::Tangent => vec![Summand::Omega(3)],
            BundleExpr::DirectSum(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.normalize_inner()?);
                }
                out
            }
            BundleExpr::TwistBy(e, k) => e
                .normalize_inner()?
                .into_iter()
                .map(|s| s.twist(*k))
                .collect(),
            BundleExpr::Dual(e) => e.normalize_inner()?.into_iter().map(Summand::dual).collect(),
            BundleExpr::Det(e) => {
                let c1 = e.normalize_inner()?.into_iter().map(Summand::first_chern).sum();
                vec![Summand::Line(c1)]
            }
            BundleExpr::Sym(e, n) => {
                let parts = e.normalize_inner()?;
                let mut degrees = Vec::with_capacity(parts.len());
                for s in parts {
                    match s {
                        Summand::Line(d) => degrees.push(d),
                        Summand::Omega(_) => {
                            return Err(SheafError::Unsupported {
                                node: self.to_string(),
                                reason: "symmetric power of a non-split bundle".into(),
                            })
                        }
                    }
                }
                sym_degrees(&degrees, *n)
                    .into_iter()
                    .map(Summand::Line)
                    .collect()
            }
        })
    }
}

/// Degrees of `Sym^n(O(d_1) + ... + O(d_r))`, one per multiset of size `n`.
fn sym_degrees(degrees: &[i64], n: u32) -> Vec<i64> {
    fn go(degrees: &[i64], n: u32, acc: i64, out: &mut Vec<i64>) {
        match degrees.split_first() {
            None => {
                if n == 0 {
                    out.push(acc)
                }
            }
            Some((&d, rest)) => {
                for take in (0..=n).rev() {
                    go(rest, n - take, acc + take as i64 * d, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(degrees, n, 0, &mut out);
    out
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Line(k) => write!(f, "O({k})"),
            BundleExpr::Cotangent => write!(f, "Omega1"),
            BundleExpr::Tangent => write!(f, "T"),
            BundleExpr::DirectSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if matches!(p, BundleExpr::DirectSum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            BundleExpr::TwistBy(e, k) => match **e {
                BundleExpr::Cotangent => write!(f, "Omega1({k})"),
                BundleExpr::Tangent => write!(f, "T({k})"),
                _ => write!(f, "Twist({e}, {k})"),
            },
            BundleExpr::Sym(e, n) => write!(f, "Sym{n}({e})"),
            BundleExpr::Dual(e) => write!(f, "Dual({e})"),
            BundleExpr::Det(e) => write!(f, "Det({e})"),
        }
    }
}
