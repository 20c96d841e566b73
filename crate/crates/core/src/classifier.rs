//! Which rank-two bundles `V = R^1 pi_* O_X` occur in each holonomy class.
//!
//! Three layers: exhaustive enumeration of split bundles, the Riemann-Roch
//! inequality engine, and documented rules whose proofs are not arithmetic.
//! Every verdict records which layer produced each step.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::citations::Cite;
use crate::sheafcalc::{chern, coh, coh_line, riemann_roch, twist_chern, BundleExpr, ChernPair, CohVector};

pub type Triple = CohVector<i64>;

/// Default first-Chern-class window for split enumeration.
pub const DEFAULT_C1_WINDOW: (i64, i64) = (-30, 0);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown holonomy class `{0}`")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HolonomyId {
    Trivial,
    SU2,
    SU2xSU2,
    SU3,
    SU4,
    Sp2,
}

impl HolonomyId {
    pub const ALL: [HolonomyId; 6] = [
        HolonomyId::Trivial,
        HolonomyId::SU2,
        HolonomyId::SU2xSU2,
        HolonomyId::SU3,
        HolonomyId::SU4,
        HolonomyId::Sp2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HolonomyId::Trivial => "Trivial",
            HolonomyId::SU2 => "SU2",
            HolonomyId::SU2xSU2 => "SU2xSU2",
            HolonomyId::SU3 => "SU3",
            HolonomyId::SU4 => "SU4",
            HolonomyId::Sp2 => "Sp2",
        }
    }

    pub fn class(self) -> HolonomyClass {
        let t = Triple::from_ints;
        let (cover, triples) = match self {
            HolonomyId::Trivial => (
                "finite unramified cover is an abelian four-fold",
                vec![t(4, 6, 4), t(3, 4, 3), t(2, 2, 2), t(1, 0, 1)],
            ),
            HolonomyId::SU2 => (
                "finite unramified cover is A x S, A abelian, S K3",
                vec![t(2, 2, 2), t(1, 0, 1)],
            ),
            HolonomyId::SU2xSU2 => (
                "X or an unramified double cover is S1 x S2, both K3",
                vec![t(0, 2, 0), t(0, 0, 0)],
            ),
            HolonomyId::SU3 => (
                "finite unramified cover is E x Y, E elliptic, Y Calabi-Yau three-fold",
                vec![t(1, 0, 1)],
            ),
            HolonomyId::SU4 => ("X is a Calabi-Yau four-fold", vec![t(0, 0, 0)]),
            HolonomyId::Sp2 => (
                "X is irreducible holomorphic symplectic",
                vec![t(0, 1, 0)],
            ),
        };
        HolonomyClass {
            id: self,
            cover,
            triples,
        }
    }
}

impl fmt::Display for HolonomyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HolonomyId {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HolonomyId::ALL
            .into_iter()
            .find(|h| h.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ClassifierError::UnknownClass(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolonomyClass {
    pub id: HolonomyId,
    pub cover: &'static str,
    /// Admissible `(h^0, h^1, h^2)(V)`.
    pub triples: Vec<Triple>,
}

/// Whether a step was computed here or is taken as an asserted rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleKind {
    Derived,
    DocumentedRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideCondition {
    pub description: String,
    pub holds: bool,
}

impl SideCondition {
    pub fn new(description: impl Into<String>, holds: bool) -> Self {
        SideCondition {
            description: description.into(),
            holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub rule: Cite,
    pub kind: RuleKind,
    pub checks: Vec<SideCondition>,
}

impl RuleApplication {
    pub fn derived(rule: Cite, checks: Vec<SideCondition>) -> Self {
        RuleApplication {
            rule,
            kind: RuleKind::Derived,
            checks,
        }
    }

    pub fn documented(rule: Cite, checks: Vec<SideCondition>) -> Self {
        RuleApplication {
            rule,
            kind: RuleKind::DocumentedRule,
            checks,
        }
    }
}

/// Status of one split candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CandidateStatus {
    Admissible,
    /// Ruled out when either hypothesis of the first-Chern equality clause holds.
    ExcludedIfFirstChernEquality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitCandidate {
    pub a: i64,
    pub b: i64,
    pub status: CandidateStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    ForcedSplit(Vec<SplitCandidate>),
    ForcedCotangent,
    Impossible,
    AbelianBaseObstruction,
    Possible,
    /// Admissible range `lo <= c1 <= hi`.
    C1Range { lo: i64, hi: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reasons: Vec<RuleApplication>,
}

impl Verdict {
    /// Some step of the chain is an asserted rule rather than a computation.
    pub fn is_documented(&self) -> bool {
        self.reasons.iter().any(|r| r.kind == RuleKind::DocumentedRule)
    }

    /// Every machine-checkable side condition holds.
    pub fn checks_hold(&self) -> bool {
        self.reasons.iter().flat_map(|r| &r.checks).all(|c| c.holds)
    }

    /// Carries at least one derived step with checks, or is documented.
    pub fn is_witnessed(&self) -> bool {
        self.is_documented()
            || self
                .reasons
                .iter()
                .any(|r| r.kind == RuleKind::Derived && !r.checks.is_empty())
    }

    /// A bundle survives: a non-excluded split candidate, the cotangent bundle,
    /// or an unconditional `Possible`.
    pub fn admits_bundle(&self) -> bool {
        match &self.outcome {
            Outcome::ForcedSplit(c) => c.iter().any(|c| c.status == CandidateStatus::Admissible),
            Outcome::ForcedCotangent | Outcome::Possible => true,
            _ => false,
        }
    }

    pub fn rules(&self) -> impl Iterator<Item = Cite> + '_ {
        self.reasons.iter().map(|r| r.rule)
    }
}

/// Hypotheses of the first-Chern equality clause; never inferred, only supplied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FirstChernFlags {
    pub singular_fibre_h1_at_least_two: Option<bool>,
    pub unipotent_monodromy: Option<bool>,
}

impl FirstChernFlags {
    pub fn either_holds(&self) -> bool {
        self.singular_fibre_h1_at_least_two == Some(true) || self.unipotent_monodromy == Some(true)
    }
}

fn split_coh(a: i64, b: i64) -> Triple {
    coh_line::<i64>(a) + coh_line::<i64>(b)
}

/// Largest `d` with `h^0(O(d)) <= bound`, or `-1` when only negative degrees qualify.
fn max_degree_with_h0_at_most(bound: i64) -> i64 {
    let mut d = -1;
    while coh_line::<i64>(d + 1).h0 <= bound {
        d += 1;
    }
    d
}

/// Every split bundle `O(a) + O(b)`, `a >= b`, whose cohomology equals `t` and
/// whose `c1 = a + b` lies in `c1_window` (inclusive).
///
/// For fixed `c1` the search is finite: `h^0(O(a)) <= h^0` bounds `a` above and
/// `h^2(O(b)) <= h^2` bounds `b` below. Ordered by decreasing `c1`, then
/// decreasing `a`.
pub fn split_candidates(t: &Triple, c1_window: (i64, i64)) -> Vec<(i64, i64)> {
    let (lo, hi) = c1_window;
    let a_max = max_degree_with_h0_at_most(t.h0);
    // h^2(O(b)) = h^0(O(-b-3))
    let b_min = -max_degree_with_h0_at_most(t.h2) - 4;
    let mut out = Vec::new();
    for c1 in (lo..=hi).rev() {
        let a_min = c1.div_euclid(2) + c1.rem_euclid(2);
        let mut a = a_max.max(a_min);
        while a >= a_min {
            let b = c1 - a;
            if b >= b_min && split_coh(a, b) == *t {
                out.push((a, b));
            }
            a -= 1;
        }
    }
    out
}

/// Riemann-Roch inequality: `chi(V(1)) = chi + c1 + 4 >= 0` together with `c1 <= -3`.
pub fn inequality_verdict(t: &Triple) -> Verdict {
    let chi = t.euler_characteristic();
    let lo = -chi - 4;
    let hi = -3;
    // chi(V(1)) through the Chern calculus for every c1 in the default window,
    // with c2 fixed by Riemann-Roch from chi
    let admissible: Vec<i64> = (DEFAULT_C1_WINDOW.0..=hi)
        .filter(|&c1| {
            let c2 = 2 + c1 * (c1 + 3) / 2 - chi;
            let v = ChernPair::<i64>::from_ints(2, c1, c2);
            riemann_roch(&twist_chern(&v, 1)).expect("rank two") >= 0
        })
        .collect();
    let first_chern = RuleApplication::documented(Cite::FirstChern, vec![]);
    let kollar = RuleApplication::documented(Cite::Kollar, vec![]);
    if lo > hi {
        let witness = SideCondition::new(
            format!(
                "chi={chi} => chi(V(1)) = chi + c1 + 4 <= {} < 0 for all c1 <= -3",
                chi + 1
            ),
            chi + 1 < 0 && admissible.is_empty(),
        );
        Verdict {
            outcome: Outcome::Impossible,
            reasons: vec![
                first_chern,
                kollar,
                RuleApplication::derived(Cite::Lemma020, vec![witness]),
            ],
        }
    } else {
        let range = SideCondition::new(
            format!("chi={chi} => {lo} <= c1 <= {hi}"),
            admissible.first() == Some(&lo.max(DEFAULT_C1_WINDOW.0)) && admissible.last() == Some(&hi),
        );
        Verdict {
            outcome: Outcome::C1Range { lo, hi },
            reasons: vec![
                first_chern,
                kollar,
                RuleApplication::derived(Cite::Kollar, vec![range]),
            ],
        }
    }
}

fn h_of(e: &BundleExpr) -> Triple {
    coh(e).expect("split bundles are supported")
}

fn trivial_sum(n: usize) -> BundleExpr {
    BundleExpr::DirectSum(vec![BundleExpr::Line(0); n])
}

/// A rule whose proof is prose, with the side conditions that can be checked attached.
///
/// Recognised ids: `343`, `222`, `abelian_fourfold`, `impossible2`, `first_chern`.
pub fn documented_rule(rule_id: &str) -> Result<Verdict, ClassifierError> {
    let verdict = match rule_id {
        "343" => {
            let t = Triple::from_ints(3, 4, 3);
            let o3 = h_of(&trivial_sum(3));
            Verdict {
                outcome: Outcome::Impossible,
                reasons: vec![RuleApplication::documented(
                    Cite::Lemma343,
                    vec![
                        SideCondition::new(
                            "split_candidates((3,4,3)) = []",
                            split_candidates(&t, DEFAULT_C1_WINDOW).is_empty(),
                        ),
                        SideCondition::new("h^1(O^3) = h^2(O^3) = 0", o3.h1 == 0 && o3.h2 == 0),
                    ],
                )],
            }
        }
        "222" => {
            let t = Triple::from_ints(2, 2, 2);
            let o2 = h_of(&trivial_sum(2));
            Verdict {
                outcome: Outcome::Impossible,
                reasons: vec![RuleApplication::documented(
                    Cite::Lemma222,
                    vec![
                        SideCondition::new(
                            "split_candidates((2,2,2)) = []",
                            split_candidates(&t, DEFAULT_C1_WINDOW).is_empty(),
                        ),
                        SideCondition::new("h^2(O^2) = 0", o2.h2 == 0),
                    ],
                )],
            }
        }
        "abelian_fourfold" => {
            // one-forms on an abelian four-fold: C(4, p) for p = 1, 2, 3
            let exterior = Triple::from_ints(
                crate::scalar::binomial(4, 1),
                crate::scalar::binomial(4, 2),
                crate::scalar::binomial(4, 3),
            );
            Verdict {
                outcome: Outcome::AbelianBaseObstruction,
                reasons: vec![RuleApplication::documented(
                    Cite::AbelianFourfold,
                    vec![SideCondition::new(
                        "(4,6,4) = (C(4,1), C(4,2), C(4,3)): every form descends",
                        exterior == Triple::from_ints(4, 6, 4),
                    )],
                )],
            }
        }
        "impossible2" => {
            let ineq = inequality_verdict(&Triple::from_ints(0, 0, 0));
            Verdict {
                outcome: Outcome::Impossible,
                reasons: vec![RuleApplication::documented(
                    Cite::Impossible2,
                    vec![SideCondition::new(
                        "inequality engine alone leaves c1 in {-4,-3}: the exclusion is not arithmetic",
                        ineq.outcome == Outcome::C1Range { lo: -4, hi: -3 },
                    )],
                )],
            }
        }
        "first_chern" => Verdict {
            outcome: Outcome::C1Range { lo: -3, hi: -3 },
            reasons: vec![RuleApplication::documented(
                Cite::FirstChernEquality,
                vec![SideCondition::new(
                    "c1(R^2) = c1(O(-3)) = -3",
                    chern::<i64>(&BundleExpr::Line(-3)).map(|c| c.c1) == Ok(-3),
                )],
            )],
        },
        other => return Err(ClassifierError::UnknownRule(other.to_string())),
    };
    Ok(verdict)
}

/// Enumeration within the inequality range plus the documented splitting argument.
fn forced_split_verdict(t: &Triple, splitting_rule: Cite) -> Verdict {
    let ineq = inequality_verdict(t);
    let Outcome::C1Range { lo, hi } = ineq.outcome else {
        return ineq;
    };
    let window = (lo.max(DEFAULT_C1_WINDOW.0), hi.min(DEFAULT_C1_WINDOW.1));
    let found = split_candidates(t, window);
    let chi = t.euler_characteristic();
    let mut rr_checks = Vec::new();
    let candidates = found
        .iter()
        .map(|&(a, b)| {
            let rr = riemann_roch(&chern::<i64>(&BundleExpr::split(a, b)).expect("split"))
                .expect("rank two");
            rr_checks.push(SideCondition::new(
                format!("riemann_roch(chern(O({a}) + O({b}))) = {rr} = chi"),
                rr == chi,
            ));
            let status = if a + b == -3 {
                CandidateStatus::Admissible
            } else {
                CandidateStatus::ExcludedIfFirstChernEquality
            };
            SplitCandidate { a, b, status }
        })
        .collect::<Vec<_>>();
    let listing = found
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(", ");
    let mut reasons = ineq.reasons;
    reasons.push(RuleApplication::derived(
        Cite::Calculus,
        vec![SideCondition::new(
            format!("split enumeration over c1 in [{}, {}] finds [{listing}]", window.0, window.1),
            !found.is_empty(),
        )],
    ));
    reasons.push(RuleApplication::derived(Cite::Calculus, rr_checks));
    reasons.push(RuleApplication::documented(splitting_rule, vec![]));
    if candidates.iter().any(|c| c.status != CandidateStatus::Admissible) {
        reasons.push(RuleApplication::documented(Cite::FirstChernEquality, vec![]));
    }
    Verdict {
        outcome: Outcome::ForcedSplit(candidates),
        reasons,
    }
}

fn cotangent_verdict(t: &Triple) -> Verdict {
    let omega = coh::<i64>(&BundleExpr::Cotangent).expect("supported");
    let c = chern::<i64>(&BundleExpr::Cotangent).expect("supported");
    let ineq = inequality_verdict(t);
    Verdict {
        outcome: Outcome::ForcedCotangent,
        reasons: vec![
            RuleApplication::derived(
                Cite::Calculus,
                vec![
                    SideCondition::new("coh(Omega1) = (0,1,0)", omega == *t),
                    SideCondition::new(
                        "split_candidates((0,1,0)) = []",
                        split_candidates(t, DEFAULT_C1_WINDOW).is_empty(),
                    ),
                    SideCondition::new(
                        "inequality range is c1 = -3 = c1(Omega1)",
                        ineq.outcome == Outcome::C1Range { lo: -3, hi: -3 } && c.c1 == -3,
                    ),
                ],
            ),
            RuleApplication::documented(Cite::CotangentCase, vec![]),
        ],
    }
}

/// One verdict per admissible triple of the class.
pub fn classify(h: HolonomyId) -> Vec<(Triple, Verdict)> {
    let rule = |id: &str| documented_rule(id).expect("known rule");
    h.class()
        .triples
        .into_iter()
        .map(|t| {
            let v = match (h, (t.h0, t.h1, t.h2)) {
                (_, (4, 6, 4)) => rule("abelian_fourfold"),
                (_, (3, 4, 3)) => rule("343"),
                (_, (2, 2, 2)) => rule("222"),
                (_, (1, 0, 1)) => forced_split_verdict(&t, Cite::Lemma101),
                (_, (0, 2, 0)) => {
                    let mut v = inequality_verdict(&t);
                    v.reasons.push(RuleApplication::derived(Cite::Impossible1, vec![]));
                    v
                }
                (HolonomyId::SU2xSU2, (0, 0, 0)) => rule("impossible2"),
                (_, (0, 0, 0)) => forced_split_verdict(&t, Cite::Lemma000),
                (_, (0, 1, 0)) => cotangent_verdict(&t),
                _ => unreachable!("class triples are fixed"),
            };
            (t, v)
        })
        .collect()
}

/// Per class: does some fibration with an admissible `V` survive?
pub fn theorem_one() -> Vec<(HolonomyId, bool)> {
    HolonomyId::ALL
        .into_iter()
        .map(|h| (h, classify(h).iter().any(|(_, v)| v.admits_bundle())))
        .collect()
}
