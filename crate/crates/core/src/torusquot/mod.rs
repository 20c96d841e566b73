//! Finite affine group actions on products of elliptic curves, optionally
//! multiplied by formal K3 and Calabi-Yau three-fold factors.
//!
//! Each elliptic factor `E_i = C / <1, tau_i>` carries lattice coordinates
//! `(x_i, y_i)` with `z_i = x_i + tau_i y_i`. Periods are opaque symbols.

pub mod scenario;

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::snf::{determinant, smith_normal_form, Matrix};

pub use scenario::{
    load_scenario, Expectation, Mismatch, Scenario, ScenarioError, ScenarioOutcome,
};

pub type Q = Ratio<i64>;

/// Closure aborts beyond this many elements.
pub const GROUP_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear part is not a signed permutation")]
    NotSignedPermutation,
    #[error("z{to} and z{from} have different periods `{to_period}` and `{from_period}`")]
    PeriodMismatch {
        to: usize,
        from: usize,
        to_period: String,
        from_period: String,
    },
    #[error("lattice matrix is not the block realization of a signed permutation")]
    NotBlockRealization,
    #[error("formal factor signs must be +1 or -1")]
    BadFormalSign,
    #[error("closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("the identity fixes every point")]
    IdentityElement,
    #[error("total complex dimension is {0}, expected 4")]
    WrongTotalDimension(usize),
    #[error("h^(4,0) = {h40}, canonical bundle of the quotient is not trivial")]
    NonTrivialCanonical { h40: u64, hp0: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormalKind {
    K3,
    CY3,
}

impl FormalKind {
    pub fn dim(self) -> usize {
        match self {
            FormalKind::K3 => 2,
            FormalKind::CY3 => 3,
        }
    }

    /// Trace on `H^{p,0}` for `p = 0..=dim` of an element acting by `sign` on the top form.
    pub fn character(self, sign: i64) -> Vec<i64> {
        let mut c = vec![0; self.dim() + 1];
        c[0] = 1;
        c[self.dim()] = sign;
        c
    }
}

/// Elliptic factors (by period symbol) followed by formal factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusModel {
    pub periods: Vec<String>,
    pub formal: Vec<FormalKind>,
}

impl TorusModel {
    pub fn new(periods: Vec<String>, formal: Vec<FormalKind>) -> Self {
        TorusModel { periods, formal }
    }

    /// Product of elliptic curves with distinct periods `tau1, tau2, ...`.
    pub fn generic(n: usize) -> Self {
        TorusModel::new((1..=n).map(|i| format!("tau{i}")).collect(), vec![])
    }

    /// Complex dimension of the torus part.
    pub fn n(&self) -> usize {
        self.periods.len()
    }

    pub fn lattice_rank(&self) -> usize {
        2 * self.n()
    }

    pub fn total_dim(&self) -> usize {
        self.n() + self.formal.iter().map(|k| k.dim()).sum::<usize>()
    }
}

/// Translation `re + tau * im` in one coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalShift {
    pub re: Q,
    pub tau: Q,
}

impl FormalShift {
    pub fn new(re: Q, tau: Q) -> Self {
        FormalShift { re, tau }
    }

    pub fn zero() -> Self {
        FormalShift::new(Q::zero(), Q::zero())
    }
}

fn frac(q: &Q) -> Q {
    q - q.floor()
}

/// `z -> L z + t` on the torus part, with a sign on each formal factor's top form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineAuto {
    l: Matrix<i64>,
    t: Vec<FormalShift>,
    lhat: Matrix<i64>,
    that: Vec<Q>,
    formal_signs: Vec<i64>,
}

fn signed_perm_of(l: &Matrix<i64>) -> Option<Vec<(usize, i64)>> {
    let n = l.len();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for row in l {
        if row.len() != n {
            return None;
        }
        let nz: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        let [j] = nz[..] else { return None };
        if row[j].abs() != 1 || seen[j] {
            return None;
        }
        seen[j] = true;
        out.push((j, row[j]));
    }
    Some(out)
}

fn block_realization(l: &Matrix<i64>) -> Matrix<i64> {
    let n = l.len();
    let mut h = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            h[2 * i][2 * j] = l[i][j];
            h[2 * i + 1][2 * j + 1] = l[i][j];
        }
    }
    h
}

impl AffineAuto {
    /// From the complex-linear data; translations are reduced modulo the lattice.
    pub fn new(
        model: &TorusModel,
        l: Matrix<i64>,
        t: Vec<FormalShift>,
        formal_signs: Vec<i64>,
    ) -> Result<Self, TorusError> {
        let n = model.n();
        if l.len() != n {
            return Err(TorusError::DimensionMismatch { expected: n, found: l.len() });
        }
        if t.len() != n {
            return Err(TorusError::DimensionMismatch { expected: n, found: t.len() });
        }
        if formal_signs.len() != model.formal.len() {
            return Err(TorusError::DimensionMismatch {
                expected: model.formal.len(),
                found: formal_signs.len(),
            });
        }
        if formal_signs.iter().any(|s| s.abs() != 1) {
            return Err(TorusError::BadFormalSign);
        }
        let perm = signed_perm_of(&l).ok_or(TorusError::NotSignedPermutation)?;
        for (i, &(j, _)) in perm.iter().enumerate() {
            if model.periods[i] != model.periods[j] {
                return Err(TorusError::PeriodMismatch {
                    to: i + 1,
                    from: j + 1,
                    to_period: model.periods[i].clone(),
                    from_period: model.periods[j].clone(),
                });
            }
        }
        let t: Vec<FormalShift> = t
            .into_iter()
            .map(|s| FormalShift::new(frac(&s.re), frac(&s.tau)))
            .collect();
        let that = t.iter().flat_map(|s| [s.re, s.tau]).collect();
        let lhat = block_realization(&l);
        Ok(AffineAuto {
            l,
            t,
            lhat,
            that,
            formal_signs,
        })
    }

    /// From lattice data; checks that `lhat` is the block realization of a signed permutation.
    pub fn from_lattice(
        model: &TorusModel,
        lhat: Matrix<i64>,
        that: Vec<Q>,
        formal_signs: Vec<i64>,
    ) -> Result<Self, TorusError> {
        let n = model.n();
        if lhat.len() != 2 * n || that.len() != 2 * n {
            return Err(TorusError::DimensionMismatch {
                expected: 2 * n,
                found: lhat.len().max(that.len()),
            });
        }
        let l: Matrix<i64> = (0..n)
            .map(|i| (0..n).map(|j| lhat[2 * i][2 * j]).collect())
            .collect();
        if block_realization(&l) != lhat {
            return Err(TorusError::NotBlockRealization);
        }
        let t = (0..n)
            .map(|i| FormalShift::new(that[2 * i], that[2 * i + 1]))
            .collect();
        let f = AffineAuto::new(model, l, t, formal_signs)?;
        debug_assert_eq!(f.lhat, lhat);
        Ok(f)
    }

    pub fn identity(model: &TorusModel) -> Self {
        let n = model.n();
        let l = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        AffineAuto::new(model, l, vec![FormalShift::zero(); n], vec![1; model.formal.len()])
            .expect("identity is valid")
    }

    pub fn linear(&self) -> &Matrix<i64> {
        &self.l
    }

    pub fn translation(&self) -> &[FormalShift] {
        &self.t
    }

    pub fn lattice_matrix(&self) -> &Matrix<i64> {
        &self.lhat
    }

    pub fn lattice_translation(&self) -> &[Q] {
        &self.that
    }

    pub fn formal_signs(&self) -> &[i64] {
        &self.formal_signs
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    /// Acts trivially on the torus part (formal signs may still be nontrivial).
    pub fn is_torus_identity(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.l[i][j] == (i == j) as i64))
            && self.that.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_torus_identity() && self.formal_signs.iter().all(|&s| s == 1)
    }

    /// `e_p` of the eigenvalues of the linear part: sum of principal `p`-minors.
    pub fn exterior_trace(&self, p: usize) -> i64 {
        principal_minor_sum(&self.l, p)
    }
}

impl fmt::Display for AffineAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            let (j, s) = (0..n)
                .find(|&j| self.l[i][j] != 0)
                .map(|j| (j, self.l[i][j]))
                .expect("signed permutation");
            let mut s = format!("{}z{}", if s < 0 { "-" } else { "" }, j + 1);
            let FormalShift { re, tau } = &self.t[i];
            if !re.is_zero() {
                s.push_str(&format!(" + {re}"));
            }
            if !tau.is_zero() {
                s.push_str(&format!(" + {tau}*tau"));
            }
            parts.push(s);
        }
        write!(f, "({})", parts.join(", "))?;
        if !self.formal_signs.is_empty() {
            let signs: Vec<String> = self.formal_signs.iter().map(|s| format!("{s:+}")).collect();
            write!(f, " [{}]", signs.join(", "))?;
        }
        Ok(())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn principal_minor_sum(m: &Matrix<i64>, p: usize) -> i64 {
    subsets(m.len(), p)
        .into_iter()
        .map(|s| {
            let minor: Matrix<i64> = s.iter().map(|&i| s.iter().map(|&j| m[i][j]).collect()).collect();
            determinant(&minor)
        })
        .sum()
}

/// `(f o g)(z) = L_f (L_g z + t_g) + t_f`, translation reduced modulo the lattice.
pub fn compose(f: &AffineAuto, g: &AffineAuto) -> Result<AffineAuto, TorusError> {
    let n = f.n();
    if g.n() != n || f.formal_signs.len() != g.formal_signs.len() {
        return Err(TorusError::DimensionMismatch { expected: n, found: g.n() });
    }
    let l: Matrix<i64> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| f.l[i][k] * g.l[k][j]).sum()).collect())
        .collect();
    let m = 2 * n;
    let that: Vec<Q> = (0..m)
        .map(|i| {
            let moved = (0..m).fold(Q::zero(), |acc, k| acc + g.that[k] * f.lhat[i][k]);
            frac(&(moved + f.that[i]))
        })
        .collect();
    let t = (0..n)
        .map(|i| FormalShift::new(that[2 * i], that[2 * i + 1]))
        .collect();
    let formal_signs = f
        .formal_signs
        .iter()
        .zip(&g.formal_signs)
        .map(|(a, b)| a * b)
        .collect();
    Ok(AffineAuto {
        lhat: block_realization(&l),
        l,
        t,
        that,
        formal_signs,
    })
}

/// Closure of a generating set under composition, with its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    model: TorusModel,
    elements: Vec<AffineAuto>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn model(&self) -> &TorusModel {
        &self.model
    }

    pub fn elements(&self) -> &[AffineAuto] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Index of `elements[i] o elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order())
            .find(|&j| self.table[i][j] == 0)
            .expect("closed finite set of bijections has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.table[i][x];
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order()).map(|i| self.element_order(i)).collect()
    }

    pub fn max_element_order(&self) -> usize {
        self.element_orders().into_iter().max().unwrap_or(1)
    }
}

pub fn generate_group(model: &TorusModel, gens: &[AffineAuto]) -> Result<FiniteGroup, TorusError> {
    for g in gens {
        // re-validate: rejects anything not lattice preserving for this model
        AffineAuto::new(model, g.l.clone(), g.t.clone(), g.formal_signs.clone())?;
    }
    let mut elements = vec![AffineAuto::identity(model)];
    let mut index: HashMap<AffineAuto, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let h = compose(g, &elements[next])?;
            if !index.contains_key(&h) {
                if elements.len() == GROUP_CAP {
                    return Err(TorusError::GroupTooLarge(GROUP_CAP));
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        next += 1;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&compose(a, b).expect("same model")])
                .collect()
        })
        .collect();
    Ok(FiniteGroup {
        model: model.clone(),
        elements,
        table,
    })
}

/// Outcome of the Smith-normal-form test on `(Lhat - I) x = -that (mod Z^2n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointCertificate {
    pub free: bool,
    /// Diagonal of `D = U (Lhat - I) V`.
    pub diagonal: Vec<i64>,
    /// `U * that`.
    pub u_that: Vec<String>,
    /// Rows where `D` vanishes; each needs an integral entry of `U * that` for a fixed point.
    pub zero_rows: Vec<usize>,
    /// First zero row whose entry is not integral, when free.
    pub obstruction: Option<usize>,
}

/// Fixed-point test directly on lattice data.
pub fn lattice_fixed_point_free(lhat: &Matrix<i64>, that: &[Q]) -> FixedPointCertificate {
    let m = lhat.len();
    let shifted: Matrix<i64> = (0..m)
        .map(|i| (0..m).map(|j| lhat[i][j] - (i == j) as i64).collect())
        .collect();
    let s = smith_normal_form(&shifted);
    let u_that: Vec<Q> = s
        .u
        .iter()
        .map(|row| row.iter().zip(that).fold(Q::zero(), |acc, (u, t)| acc + t * u))
        .collect();
    let diagonal = s.diagonal();
    let zero_rows: Vec<usize> = (0..m).filter(|&i| diagonal[i] == 0).collect();
    let obstruction = zero_rows.iter().copied().find(|&i| !u_that[i].is_integer());
    FixedPointCertificate {
        free: obstruction.is_some(),
        diagonal,
        u_that: u_that.iter().map(ToString::to_string).collect(),
        zero_rows,
        obstruction,
    }
}

/// Whether `f` has no fixed point on the torus part.
pub fn fixed_point_free(f: &AffineAuto) -> Result<FixedPointCertificate, TorusError> {
    if f.is_torus_identity() {
        return Err(TorusError::IdentityElement);
    }
    Ok(lattice_fixed_point_free(&f.lhat, &f.that))
}

/// Every non-identity element moves every point of the torus part. An element
/// that is trivial on the torus but not on a formal factor counts as not free:
/// nothing about the formal factor's fixed points is modelled.
pub fn action_free(g: &FiniteGroup) -> bool {
    g.elements
        .iter()
        .skip(1)
        .all(|f| fixed_point_free(f).map(|c| c.free).unwrap_or(false))
}

fn average(values: impl Iterator<Item = i64>, order: usize) -> u64 {
    let total: i64 = values.sum();
    let avg = Q::new(total, order as i64);
    assert!(avg.is_integer() && !avg.is_negative(), "character average {avg} is not a dimension");
    avg.to_integer() as u64
}

/// Dimension of the invariant part of `Lambda^p` of the cotangent space of the torus.
pub fn invariant_forms(g: &FiniteGroup, p: usize) -> u64 {
    average(g.elements.iter().map(|f| f.exterior_trace(p)), g.order())
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientHodge {
    /// `h^{p,0}`, `p = 0..=4`.
    pub hp0: Vec<u64>,
    /// `h^q(O_X)`, `q = 0..=4`.
    pub hq: Vec<u64>,
}

impl QuotientHodge {
    /// `(h^1, h^2, h^3)` of the structure sheaf.
    pub fn middle(&self) -> [u64; 3] {
        [self.hq[1], self.hq[2], self.hq[3]]
    }
}

/// Graded character of one element on `H^{*,0}` of the whole product.
pub fn graded_character(f: &AffineAuto, model: &TorusModel) -> Vec<i64> {
    let mut c: Vec<i64> = (0..=f.n()).map(|p| f.exterior_trace(p)).collect();
    for (kind, &s) in model.formal.iter().zip(&f.formal_signs) {
        c = poly_mul(&c, &kind.character(s));
    }
    c
}

/// Hodge numbers `h^{p,0}` of the quotient by averaging graded characters.
///
/// Torus actions are real and formal factors act by signs, so characters are
/// real and `h^q(O_X) = h^{0,q} = h^{q,0}`.
pub fn quotient_hodge(g: &FiniteGroup) -> Result<QuotientHodge, TorusError> {
    let model = &g.model;
    let dim = model.total_dim();
    if dim != 4 {
        return Err(TorusError::WrongTotalDimension(dim));
    }
    let chars: Vec<Vec<i64>> = g.elements.iter().map(|f| graded_character(f, model)).collect();
    let hp0: Vec<u64> = (0..=4)
        .map(|p| average(chars.iter().map(|c| c[p]), g.order()))
        .collect();
    if hp0[4] != 1 {
        return Err(TorusError::NonTrivialCanonical { h40: hp0[4], hp0 });
    }
    Ok(QuotientHodge {
        hq: hp0.clone(),
        hp0,
    })
}

/// Least common multiple of the translation denominators.
pub fn translation_denominator(f: &AffineAuto) -> i64 {
    f.that.iter().fold(1, |acc, q| acc.lcm(q.denom()))
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(re: Q, tau: Q) -> FormalShift {
        FormalShift::new(re, tau)
    }

    fn d8_model() -> TorusModel {
        TorusModel::new(
            vec!["tau".into(), "tau".into(), "tau3".into(), "tau4".into()],
            vec![],
        )
    }

    fn diag(signs: &[i64]) -> Matrix<i64> {
        let n = signs.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { signs[i] } else { 0 }).collect())
            .collect()
    }

    fn d8_gens() -> Vec<AffineAuto> {
        let m = d8_model();
        let z = Q::zero;
        let g1 = AffineAuto::new(
            &m,
            diag(&[-1, 1, 1, -1]),
            vec![shift(z(), z()), shift(z(), z()), shift(q(1, 2), z()), shift(q(1, 4), z())],
            vec![],
        )
        .unwrap();
        let g2 = AffineAuto::new(
            &m,
            diag(&[1, -1, 1, -1]),
            vec![shift(z(), z()), shift(z(), z()), shift(q(1, 2), z()), shift(q(3, 4), z())],
            vec![],
        )
        .unwrap();
        let swap = vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, -1],
        ];
        let g3 = AffineAuto::new(
            &m,
            swap,
            vec![shift(z(), z()), shift(z(), z()), shift(z(), q(1, 2)), shift(z(), z())],
            vec![],
        )
        .unwrap();
        vec![g1, g2, g3]
    }

    #[test]
    fn d8_relations() {
        let [g1, g2, g3] = <[AffineAuto; 3]>::try_from(d8_gens()).unwrap();
        let conj = compose(&g3, &compose(&g1, &g3).unwrap()).unwrap();
        assert_eq!(conj, g2);
        let r = compose(&g1, &g3).unwrap();
        let model = d8_model();
        let mut x = r.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = compose(&r, &x).unwrap();
            k += 1;
        }
        assert_eq!(k, 4);
        let ident = AffineAuto::identity(&model);
        assert_eq!(compose(&ident, &g1).unwrap(), g1);
        // the rotation translates (z3, z4) by (1/2 + tau3/2, 1/4)
        assert_eq!(r.translation()[2], shift(q(1, 2), q(1, 2)));
        assert_eq!(r.translation()[3], shift(q(1, 4), Q::zero()));
    }

    #[test]
    fn d8_group() {
        let g = generate_group(&d8_model(), &d8_gens()).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.max_element_order(), 4);
        assert!(action_free(&g));
        let forms: Vec<u64> = (1..=4).map(|p| invariant_forms(&g, p)).collect();
        assert_eq!(forms, vec![1, 0, 1, 1]);
        let h = quotient_hodge(&g).unwrap();
        assert_eq!(h.middle(), [1, 0, 1]);
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
        }
    }

    #[test]
    fn single_curve_examples() {
        let m = TorusModel::generic(1);
        let neg = AffineAuto::new(&m, vec![vec![-1]], vec![FormalShift::zero()], vec![]).unwrap();
        assert!(!fixed_point_free(&neg).unwrap().free);
        let half = AffineAuto::new(&m, vec![vec![1]], vec![shift(q(1, 2), Q::zero())], vec![]).unwrap();
        let c = fixed_point_free(&half).unwrap();
        assert!(c.free);
        assert_eq!(c.diagonal, vec![0, 0]);
        assert_eq!(
            fixed_point_free(&AffineAuto::identity(&m)),
            Err(TorusError::IdentityElement)
        );
        let g = generate_group(&m, &[neg]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!action_free(&g));
    }

    #[test]
    fn restricted_d8_generator_is_free() {
        let m = TorusModel::new(vec!["tau3".into(), "tau4".into()], vec![]);
        let f = AffineAuto::new(
            &m,
            diag(&[1, -1]),
            vec![shift(q(1, 2), Q::zero()), shift(q(1, 4), Q::zero())],
            vec![],
        )
        .unwrap();
        let c = fixed_point_free(&f).unwrap();
        assert!(c.free);
        assert_eq!(c.zero_rows.len(), 2);
    }

    #[test]
    fn bielliptic_with_formal_k3() {
        let m = TorusModel::new(vec!["tau1".into(), "tau2".into()], vec![FormalKind::K3]);
        let f = AffineAuto::new(
            &m,
            diag(&[1, -1]),
            vec![shift(q(1, 2), Q::zero()), FormalShift::zero()],
            vec![-1],
        )
        .unwrap();
        let g = generate_group(&m, &[f]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(action_free(&g));
        assert_eq!(invariant_forms(&g, 1), 1);
        assert_eq!(invariant_forms(&g, 2), 0);
        let h = quotient_hodge(&g).unwrap();
        assert_eq!(h.hp0, vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn enriques_type() {
        let m = TorusModel::new(vec![], vec![FormalKind::K3, FormalKind::K3]);
        let f = AffineAuto::new(&m, vec![], vec![], vec![-1, -1]).unwrap();
        let g = generate_group(&m, &[f]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(quotient_hodge(&g).unwrap().hq, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn trivial_group_forms() {
        let m = TorusModel::generic(4);
        let g = generate_group(&m, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(quotient_hodge(&g).unwrap().hp0, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn noncanonical_quotient_is_reported() {
        let m = TorusModel::generic(4);
        let f = AffineAuto::new(&m, diag(&[-1, 1, 1, 1]), vec![FormalShift::zero(); 4], vec![]).unwrap();
        let g = generate_group(&m, &[f]).unwrap();
        assert!(matches!(
            quotient_hodge(&g),
            Err(TorusError::NonTrivialCanonical { h40: 0, .. })
        ));
        let g3 = generate_group(&TorusModel::generic(3), &[]).unwrap();
        assert_eq!(quotient_hodge(&g3), Err(TorusError::WrongTotalDimension(3)));
    }

    #[test]
    fn validation_errors() {
        let m = TorusModel::generic(2);
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(
            AffineAuto::new(&m, swap, vec![FormalShift::zero(); 2], vec![]),
            Err(TorusError::PeriodMismatch { .. })
        ));
        assert_eq!(
            AffineAuto::new(&m, vec![vec![2, 0], vec![0, 1]], vec![FormalShift::zero(); 2], vec![]),
            Err(TorusError::NotSignedPermutation)
        );
        let lhat = vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]];
        assert_eq!(
            AffineAuto::from_lattice(&m, lhat, vec![Q::zero(); 4], vec![]),
            Err(TorusError::NotBlockRealization)
        );
    }

    #[test]
    fn lattice_round_trip() {
        for f in d8_gens() {
            let g = AffineAuto::from_lattice(
                &d8_model(),
                f.lattice_matrix().clone(),
                f.lattice_translation().to_vec(),
                vec![],
            )
            .unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn group_cap() {
        // translation by 1/2000 has order 2000
        let m = TorusModel::generic(1);
        let f = AffineAuto::new(&m, vec![vec![1]], vec![shift(q(1, 2000), Q::zero())], vec![]).unwrap();
        assert_eq!(generate_group(&m, &[f]).unwrap_err(), TorusError::GroupTooLarge(GROUP_CAP));
    }
}
