//! Fixed table of citation keys attached to every rule application and report record.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cite {
    HolonomyClasses,
    EnriquesQuotient,
    DirectImages,
    LerayDegenerates,
    AbelianTriples,
    AbelianFourfold,
    Lemma343,
    Lemma222,
    Lemma101,
    D8Example,
    BiellipticExample,
    FirstChern,
    FirstChernEquality,
    Kollar,
    Lemma020,
    Impossible1,
    Impossible2,
    WeierstrassCy3,
    FibreProduct,
    Lemma000,
    CotangentCase,
    GeneralizedKummer,
    MildDegenerations,
    Normalize,
    BranchSections,
    No03,
    Cy4Fold,
    Hilb2K3,
    TheoremOne,
    TheoremTwo,
    Calculus,
}

impl Cite {
    pub const ALL: [Cite; 31] = [
        Cite::HolonomyClasses,
        Cite::EnriquesQuotient,
        Cite::DirectImages,
        Cite::LerayDegenerates,
        Cite::AbelianTriples,
        Cite::AbelianFourfold,
        Cite::Lemma343,
        Cite::Lemma222,
        Cite::Lemma101,
        Cite::D8Example,
        Cite::BiellipticExample,
        Cite::FirstChern,
        Cite::FirstChernEquality,
        Cite::Kollar,
        Cite::Lemma020,
        Cite::Impossible1,
        Cite::Impossible2,
        Cite::WeierstrassCy3,
        Cite::FibreProduct,
        Cite::Lemma000,
        Cite::CotangentCase,
        Cite::GeneralizedKummer,
        Cite::MildDegenerations,
        Cite::Normalize,
        Cite::BranchSections,
        Cite::No03,
        Cite::Cy4Fold,
        Cite::Hilb2K3,
        Cite::TheoremOne,
        Cite::TheoremTwo,
        Cite::Calculus,
    ];

    pub fn key(self) -> &'static str {
        self.entry().0
    }

    pub fn statement(self) -> &'static str {
        self.entry().1
    }

    /// `key: statement`, the form stored in report records.
    pub fn text(self) -> String {
        format!("{}: {}", self.key(), self.statement())
    }

    fn entry(self) -> (&'static str, &'static str) {
        match self {
            Cite::HolonomyClasses => (
                "prop:berger",
                "restricted holonomy is trivial, SU(2), SU(2)xSU(2), SU(3), SU(4) or Sp(2)",
            ),
            Cite::EnriquesQuotient => (
                "example:enriques-quotient",
                "S1 x S2 / (g1, g2) with g_i = -1 on sigma_i has h^k(O) = 1 for k = 0, 4 only",
            ),
            Cite::DirectImages => ("lemma:direct-images", "R^0 = O and R^2 = O(-3)"),
            Cite::LerayDegenerates => (
                "lemma:leray",
                "Leray degenerates at E_2, so H^q(P^2, V) = H^{q+1}(X, O_X)",
            ),
            Cite::AbelianTriples => (
                "triples:abelian-cover",
                "(h^q(V)) is one of (4,6,4), (3,4,3), (2,2,2), (1,0,1)",
            ),
            Cite::AbelianFourfold => (
                "lemma:abelian_fourfold",
                "an abelian four-fold fibres by abelian surfaces only over an abelian surface",
            ),
            Cite::Lemma343 => ("lemma:343", "no rank-2 bundle on P^2 has h^q = (3,4,3)"),
            Cite::Lemma222 => ("lemma:222", "no rank-2 bundle on P^2 has h^q = (2,2,2)"),
            Cite::Lemma101 => ("lemma:101", "h^q(V) = (1,0,1) forces V = O + O(-3)"),
            Cite::D8Example => (
                "example:d8",
                "D8 acting freely on E x E x E3 x E4 gives h^i(O_X) = (1,0,1), i = 1..3",
            ),
            Cite::BiellipticExample => (
                "example:bielliptic",
                "involution on E1 x E2 x S, bielliptic on the torus part, gives (1,0,1)",
            ),
            Cite::FirstChern => ("lemma:first_chern", "c1(V) <= c1(R^2) = -3"),
            Cite::FirstChernEquality => (
                "lemma:first_chern(equality)",
                "c1(V) = -3 if generic singular fibres have h^1 >= 2 or monodromy is unipotent",
            ),
            Cite::Kollar => ("lemma:kollar", "h^q(V(k)) = 0 for k >= 1, q >= 1"),
            Cite::Lemma020 => (
                "lemma:020",
                "h^q(V) = (0,2,0) with c1 <= -3 gives chi(V(1)) <= -1 < 0",
            ),
            Cite::Impossible1 => (
                "cor:impossible1",
                "a product of two K3 surfaces is not fibred by abelian surfaces over P^2",
            ),
            Cite::Impossible2 => (
                "prop:impossible2",
                "S1 x S2 / (g1, g2) is not fibred by abelian surfaces over P^2",
            ),
            Cite::WeierstrassCy3 => (
                "example:weierstrass-cy3",
                "y^2 z = x^3 + a x z^2 + b z^3, a in O(12), b in O(18), Delta = 4a^3 + 27b^2",
            ),
            Cite::FibreProduct => (
                "example:fibre-product",
                "X1 x_{P^2} X2 with R^1 = O(-1) + O(-2); Delta1, Delta2 meet transversally",
            ),
            Cite::Lemma000 => (
                "lemma:000",
                "h^q(V) = (0,0,0) forces V = O(-1) + O(-2) or O(-2) + O(-2)",
            ),
            Cite::CotangentCase => (
                "cotangent-case",
                "for a Lagrangian fibration R^i = Omega^i, so V = Omega^1 with h^q = (0,1,0)",
            ),
            Cite::GeneralizedKummer => (
                "example:generalized-kummer",
                "Lagrangian fibrations of generalized Kummer four-folds with (1,3)-polarized fibres",
            ),
            Cite::MildDegenerations => (
                "def:mild-degenerations",
                "smooth total space, nodes or cusps only, distinct tangent cones at two-node curves",
            ),
            Cite::Normalize => ("lemma:normalize", "W = O(d) (x) det W^* (x) R^1 f_* O_Y, so d = c1(W)"),
            Cite::BranchSections => (
                "branch-sections",
                "branch divisor is a section of O(-6) (x) Sym^6 W^*",
            ),
            Cite::No03 => ("prop:no0-3", "W = O + O(-3) forces s0 = s1 = 0, a repeated branch point"),
            Cite::Cy4Fold => (
                "prop:CY4-fold",
                "W = O(-1) + O(-2) gives a Calabi-Yau four-fold in an 84 - 1 - 8 = 75 dimensional family",
            ),
            Cite::Hilb2K3 => (
                "prop:hilb2K3",
                "W = Omega^1 gives the Beauville-Mukai system in a 28 - 1 - 8 = 19 dimensional family",
            ),
            Cite::TheoremOne => (
                "thm:1",
                "abelian surface fibrations over P^2 with K trivial exist for every holonomy except SU(2)xSU(2)",
            ),
            Cite::TheoremTwo => (
                "thm:2",
                "Jacobian fibrations with mild degenerations are CY4 (75 parameters) or IHS (19 parameters)",
            ),
            Cite::Calculus => ("calculus", "exact cohomology and Chern calculus on P^2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn keys_are_unique_and_nonempty() {
        let keys: HashSet<_> = Cite::ALL.iter().map(|c| c.key()).collect();
        assert_eq!(keys.len(), Cite::ALL.len());
        assert!(Cite::ALL.iter().all(|c| !c.statement().is_empty()));
    }
}
