//! Fibrations by Jacobians of genus-two curves: the branch sextic of the
//! hyperelliptic double cover lives in `H^0(O(-6) (x) Sym^6 W^*)` for a rank-two
//! bundle `W` on the plane, and the four candidate `W` are decided here.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::citations::Cite;
use crate::classifier::{HolonomyId, Outcome, RuleApplication, SideCondition, Verdict};
use crate::leray::{middle_slice, total_coh, DirectImageData};
use crate::sheafcalc::{chern, coh_line, sym6_dual_twist, BundleExpr};
use crate::weierstrass::param_count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacfibError {
    #[error("unknown case `{0}` (expected one of O+O(-3), O(-1)+O(-2), Cotangent, O(-2)+O(-2))")]
    UnknownCase(String),
}

/// The candidate bundles `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseW {
    /// `O + O(-3)`
    Split0m3,
    /// `O(-1) + O(-2)`
    Split1m2,
    Cotangent,
    /// `O(-2) + O(-2)`
    Split2m2,
}

impl CaseW {
    pub const ALL: [CaseW; 4] = [CaseW::Split0m3, CaseW::Split1m2, CaseW::Cotangent, CaseW::Split2m2];

    pub fn name(self) -> &'static str {
        match self {
            CaseW::Split0m3 => "O+O(-3)",
            CaseW::Split1m2 => "O(-1)+O(-2)",
            CaseW::Cotangent => "Cotangent",
            CaseW::Split2m2 => "O(-2)+O(-2)",
        }
    }

    /// Summand degrees of a split `W`.
    pub fn split_degrees(self) -> Option<(i64, i64)> {
        match self {
            CaseW::Split0m3 => Some((0, -3)),
            CaseW::Split1m2 => Some((-1, -2)),
            CaseW::Cotangent => None,
            CaseW::Split2m2 => Some((-2, -2)),
        }
    }

    pub fn bundle(self) -> BundleExpr {
        match self.split_degrees() {
            Some((a, b)) => BundleExpr::split(a, b),
            None => BundleExpr::Cotangent,
        }
    }

    pub fn c1(self) -> i64 {
        chern::<i64>(&self.bundle()).expect("rank two").c1
    }
}

impl fmt::Display for CaseW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseW {
    type Err = JacfibError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        CaseW::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(&key))
            .or_else(|| key.eq_ignore_ascii_case("omega1").then_some(CaseW::Cotangent))
            .ok_or_else(|| JacfibError::UnknownCase(s.to_string()))
    }
}

/// Highest weight of a polynomial `GL(3)` representation; sorted on use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GL3Weight(pub [i64; 3]);

impl GL3Weight {
    pub fn sorted(self) -> [i64; 3] {
        let mut w = self.0;
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }
}

/// Weyl dimension formula for `GL(3)`.
pub fn borel_weil_dim(w: GL3Weight) -> u64 {
    let [m1, m2, m3] = w.sorted();
    ((m1 - m2 + 1) * (m2 - m3 + 1) * (m1 - m3 + 2) / 2) as u64
}

/// The regularity hypotheses on the family of genus-two curves.
///
/// Never computed; carried on every verdict as an assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MildDegenerationsSpec {
    pub smooth_total_space: bool,
    pub only_nodes_or_cusps: bool,
    pub distinct_tangent_cones_at_two_node_curves: bool,
}

impl MildDegenerationsSpec {
    pub const ASSUMED: MildDegenerationsSpec = MildDegenerationsSpec {
        smooth_total_space: true,
        only_nodes_or_cusps: true,
        distinct_tangent_cones_at_two_node_curves: true,
    };
}

/// `d` with `W = O(d) (x) det W^* (x) W`, i.e. `2 (d - c1) + c1 = c1`.
pub fn normalize_d(c1_w: i64) -> i64 {
    c1_w
}

/// Coefficient `s_i` of `z^i` in the branch sextic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchCoefficient {
    pub index: usize,
    pub degree: i64,
    pub dim: u64,
    /// `h^0 = 0`, so the coefficient vanishes identically.
    pub forced_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchSectionSpace {
    pub description: String,
    /// Empty for the cotangent case.
    pub coefficients: Vec<BranchCoefficient>,
    pub weight: Option<GL3Weight>,
    pub dimension: u64,
}

impl BranchSectionSpace {
    pub fn degrees(&self) -> Vec<i64> {
        self.coefficients.iter().map(|c| c.degree).collect()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.coefficients.iter().map(|c| c.dim).collect()
    }

    /// Indices of the coefficients forced to vanish.
    pub fn forced_zero(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .filter(|c| c.forced_zero)
            .map(|c| c.index)
            .collect()
    }
}

pub fn branch_section_space(case: CaseW) -> BranchSectionSpace {
    match case.split_degrees() {
        Some((a, b)) => {
            let coefficients: Vec<_> = sym6_dual_twist(a, b, -6)
                .into_iter()
                .enumerate()
                .map(|(index, degree)| {
                    let dim = coh_line::<i64>(degree).h0 as u64;
                    BranchCoefficient {
                        index,
                        degree,
                        dim,
                        forced_zero: dim == 0,
                    }
                })
                .collect();
            BranchSectionSpace {
                description: format!("H^0(O(-6) (x) Sym^6 (O({}) + O({})))", -a, -b),
                dimension: coefficients.iter().map(|c| c.dim).sum(),
                coefficients,
                weight: None,
            }
        }
        None => {
            // O(-6) (x) Sym^6 T = Sym^6 (T(-1)), sections Sym^6 C^3
            let weight = GL3Weight([6, 0, 0]);
            BranchSectionSpace {
                description: "H^0(Sym^6 (T(-1))) = Sym^6 C^3".into(),
                coefficients: vec![],
                weight: Some(weight),
                dimension: borel_weil_dim(weight),
            }
        }
    }
}

/// `z = 0` is a double root of the sextic for every fibre once `s_0` and `s_1`
/// both vanish identically.
pub fn repeated_root_verdict(forced_zero: &[usize]) -> Verdict {
    let s0 = forced_zero.contains(&0);
    let s1 = forced_zero.contains(&1);
    let check = SideCondition::new(format!("s0 == 0: {s0}, s1 == 0: {s1}"), true);
    if s0 && s1 {
        Verdict {
            outcome: Outcome::Impossible,
            reasons: vec![
                RuleApplication::derived(Cite::BranchSections, vec![check]),
                RuleApplication::documented(Cite::No03, vec![]),
                RuleApplication::documented(Cite::MildDegenerations, vec![]),
            ],
        }
    } else {
        Verdict {
            outcome: Outcome::Possible,
            reasons: vec![RuleApplication::derived(Cite::BranchSections, vec![check])],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseStatus {
    Admissible,
    Impossible,
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobianCase {
    pub w: CaseW,
    pub d: i64,
    pub section_space: BranchSectionSpace,
    pub status: CaseStatus,
    pub verdict: Verdict,
    pub holonomy: Option<HolonomyId>,
    pub param_count: Option<i64>,
    /// `h^k(O_X)`, `k = 0..=4`, when the cross-check is enabled.
    pub leray: Option<[i64; 5]>,
    pub assumptions: MildDegenerationsSpec,
    pub annotations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobianTable {
    pub cases: Vec<JacobianCase>,
}

impl JacobianTable {
    pub fn admissible(&self) -> impl Iterator<Item = &JacobianCase> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Admissible)
    }

    pub fn case(&self, w: CaseW) -> &JacobianCase {
        self.cases.iter().find(|c| c.w == w).expect("all four cases present")
    }
}

pub fn classify_jacobian_fibrations(leray_check: bool) -> JacobianTable {
    let cases = CaseW::ALL
        .into_iter()
        .map(|w| classify_case(w, leray_check))
        .collect();
    JacobianTable { cases }
}

fn classify_case(w: CaseW, leray_check: bool) -> JacobianCase {
    let c1 = w.c1();
    let d = normalize_d(c1);
    let space = branch_section_space(w);
    let normalize = RuleApplication::documented(
        Cite::Normalize,
        vec![SideCondition::new(format!("d = c1(W) = {d}"), d == c1)],
    );
    let leray = leray_check.then(|| {
        let data = DirectImageData::with_middle(w.bundle()).expect("rank two middle term");
        total_coh::<i64>(&data).expect("closed-form cohomology")
    });
    let mut annotations = Vec::new();

    let (status, verdict, holonomy, params) = match w {
        CaseW::Split0m3 => {
            let mut v = repeated_root_verdict(&space.forced_zero());
            v.reasons.insert(0, normalize);
            (CaseStatus::Impossible, v, None, None)
        }
        CaseW::Split2m2 => {
            let v = Verdict {
                outcome: Outcome::Impossible,
                reasons: vec![
                    normalize,
                    RuleApplication::documented(Cite::Lemma000, vec![]),
                    RuleApplication::documented(
                        Cite::FirstChernEquality,
                        vec![SideCondition::new(
                            format!("c1(W) = {c1} != -3, while nodal generic singular fibres force c1 = -3"),
                            c1 != -3,
                        )],
                    ),
                ],
            };
            (CaseStatus::Excluded, v, None, None)
        }
        CaseW::Split1m2 | CaseW::Cotangent => {
            let (rule, holonomy, expected) = if w == CaseW::Split1m2 {
                (Cite::Cy4Fold, HolonomyId::SU4, [1, 0, 0, 0, 1])
            } else {
                annotations.push(
                    "Beauville-Mukai system: double cover of the dual plane branched in a sextic (documented, not recomputed)"
                        .to_string(),
                );
                (Cite::Hilb2K3, HolonomyId::Sp2, [1, 0, 1, 0, 1])
            };
            let params = param_count(&[space.dimension], 1);
            let mut checks = vec![
                SideCondition::new(format!("dim H^0 = {}", space.dimension), space.dimension > 0),
                SideCondition::new(format!("{} - 1 - 8 = {params}", space.dimension), true),
            ];
            if let Some(h) = leray {
                let triple = holonomy.class().triples;
                let slice = middle_slice(&h);
                checks.push(SideCondition::new(
                    format!("leray h^k(O_X) = {h:?}"),
                    h == expected && triple.iter().any(|t| t.as_array() == slice),
                ));
            }
            let mut reasons = vec![normalize];
            let rr = repeated_root_verdict(&space.forced_zero());
            reasons.extend(rr.reasons);
            reasons.push(RuleApplication::derived(Cite::Calculus, checks));
            reasons.push(RuleApplication::documented(rule, vec![]));
            reasons.push(RuleApplication::documented(Cite::MildDegenerations, vec![]));
            let v = Verdict {
                outcome: Outcome::Possible,
                reasons,
            };
            (CaseStatus::Admissible, v, Some(holonomy), Some(params))
        }
    };

    JacobianCase {
        w,
        d,
        section_space: space,
        status,
        verdict,
        holonomy,
        param_count: params,
        leray,
        assumptions: MildDegenerationsSpec::ASSUMED,
        annotations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_d(-3), -3);
        assert_eq!(normalize_d(0), 0);
        assert_eq!(normalize_d(-4), -4);
    }

    #[test]
    fn normalize_matches_chern() {
        // c1(O(d) (x) det W^* (x) W) = c1(W) exactly when d = c1(W)
        for w in CaseW::ALL {
            let c1 = w.c1();
            let d = normalize_d(c1);
            let rhs = chern::<i64>(&w.bundle().twist(d - c1)).unwrap();
            assert_eq!(rhs.c1, c1, "{w}");
        }
        assert_eq!(CaseW::Split2m2.c1(), -4);
        assert_eq!(CaseW::Cotangent.c1(), -3);
    }

    #[test]
    fn section_space_examples() {
        let s = branch_section_space(CaseW::Split0m3);
        assert_eq!(s.degrees(), vec![-6, -3, 0, 3, 6, 9, 12]);
        assert_eq!(s.dims(), vec![0, 0, 1, 10, 28, 55, 91]);
        assert_eq!(s.forced_zero(), vec![0, 1]);
        let s = branch_section_space(CaseW::Split1m2);
        assert_eq!(s.degrees(), (0..=6).collect::<Vec<_>>());
        assert_eq!(s.dimension, 84);
        assert!(s.forced_zero().is_empty());
        assert_eq!(branch_section_space(CaseW::Cotangent).dimension, 28);
    }

    #[test]
    fn repeated_root_examples() {
        assert_eq!(repeated_root_verdict(&[0, 1]).outcome, Outcome::Impossible);
        assert_eq!(repeated_root_verdict(&[]).outcome, Outcome::Possible);
        assert_eq!(repeated_root_verdict(&[0]).outcome, Outcome::Possible);
    }

    #[test]
    fn borel_weil_examples() {
        assert_eq!(borel_weil_dim(GL3Weight([6, 0, 0])), 28);
        assert_eq!(borel_weil_dim(GL3Weight([0, 0, 0])), 1);
        assert_eq!(borel_weil_dim(GL3Weight([1, 1, 0])), 3);
        assert_eq!(borel_weil_dim(GL3Weight([0, 6, 0])), 28);
    }

    #[test]
    fn final_table() {
        let t = classify_jacobian_fibrations(true);
        let adm: Vec<_> = t.admissible().map(|c| (c.w, c.param_count.unwrap())).collect();
        assert_eq!(adm, vec![(CaseW::Split1m2, 75), (CaseW::Cotangent, 19)]);
        assert_eq!(t.case(CaseW::Split1m2).leray, Some([1, 0, 0, 0, 1]));
        assert_eq!(t.case(CaseW::Cotangent).leray, Some([1, 0, 1, 0, 1]));
        assert_eq!(t.case(CaseW::Split0m3).status, CaseStatus::Impossible);
        assert_eq!(t.case(CaseW::Split2m2).status, CaseStatus::Excluded);
        assert!(t.cases.iter().all(|c| c.verdict.checks_hold()));
        assert_eq!(t, classify_jacobian_fibrations(true));
        assert!(classify_jacobian_fibrations(false).cases.iter().all(|c| c.leray.is_none()));
    }

    #[test]
    fn parse_case() {
        assert_eq!("O(-1) + O(-2)".parse::<CaseW>().unwrap(), CaseW::Split1m2);
        assert_eq!("omega1".parse::<CaseW>().unwrap(), CaseW::Cotangent);
        assert!("O(1)".parse::<CaseW>().is_err());
    }
}
