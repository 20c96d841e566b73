//! Weierstrass fibrations `y^2 z = x^3 + a x z^2 + b z^3` over the plane.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{CompiledPoly, HomogPoly, PolyError, PowerTable};
use crate::scalar::{Field, Fp, Modulus};
use crate::sheafcalc::coh_line;

/// Largest characteristic for exhaustive scans.
pub const MAX_SCAN_PRIME: u32 = 257;

/// Stated on every finite-field certificate.
pub const RATIONAL_POINTS_CAVEAT: &str =
    "checked on F_p-rational points only; not a proof over the algebraic closure";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("degree of L must be at least 1, got {0}")]
    NonPositiveDegree(i64),
    #[error("characteristic {0} is excluded (2 and 3 divide the discriminant)")]
    BadCharacteristic(u64),
    #[error("p = {0} exceeds the scan budget (p <= {MAX_SCAN_PRIME})")]
    PrimeTooLarge(u32),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("a has degree {found}, expected {expected}")]
    WrongDegreeA { expected: u32, found: u32 },
    #[error("b has degree {found}, expected {expected}")]
    WrongDegreeB { expected: u32, found: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleDegrees {
    /// Degrees of `W^* = L^2 + L^3 + O`.
    pub dual: [i64; 3],
    /// Degrees of the sections `a` and `b`.
    pub sections: [i64; 2],
}

pub fn weierstrass_bundle_degrees(l: i64) -> Result<BundleDegrees, WeierstrassError> {
    if l < 1 {
        return Err(WeierstrassError::NonPositiveDegree(l));
    }
    Ok(BundleDegrees {
        dual: [2 * l, 3 * l, 0],
        sections: [4 * l, 6 * l],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassFamily<F: Field> {
    l: u32,
    a: HomogPoly<F>,
    b: HomogPoly<F>,
}

impl<F: Field> WeierstrassFamily<F> {
    pub fn new(l: u32, a: HomogPoly<F>, b: HomogPoly<F>) -> Result<Self, WeierstrassError> {
        if l < 1 {
            return Err(WeierstrassError::NonPositiveDegree(l as i64));
        }
        if a.degree() != 4 * l {
            return Err(WeierstrassError::WrongDegreeA { expected: 4 * l, found: a.degree() });
        }
        if b.degree() != 6 * l {
            return Err(WeierstrassError::WrongDegreeB { expected: 6 * l, found: b.degree() });
        }
        Ok(WeierstrassFamily { l, a, b })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn a(&self) -> &HomogPoly<F> {
        &self.a
    }

    pub fn b(&self) -> &HomogPoly<F> {
        &self.b
    }

    /// `(a, b) -> (lambda^4 a, lambda^6 b)`.
    pub fn rescale(&self, lambda: &F) -> Self {
        let l2 = lambda.clone() * lambda.clone();
        let l4 = l2.clone() * l2.clone();
        let l6 = l4.clone() * l2;
        WeierstrassFamily {
            l: self.l,
            a: self.a.scale(&l4),
            b: self.b.scale(&l6),
        }
    }
}

impl WeierstrassFamily<Fp> {
    /// Uniformly random `a`, `b` over `F_p`.
    pub fn random<R: rand::Rng>(m: Modulus, l: u32, rng: &mut R) -> Self {
        let a = HomogPoly::random(m, 4 * l, rng);
        let b = HomogPoly::random(m, 6 * l, rng);
        WeierstrassFamily { l, a, b }
    }
}

/// `4 a^3 + 27 b^2`, of degree `12 l`.
pub fn discriminant<F: Field>(w: &WeierstrassFamily<F>) -> Result<HomogPoly<F>, WeierstrassError> {
    let ch = F::characteristic(w.a.ctx());
    if ch == 2 || ch == 3 {
        return Err(WeierstrassError::BadCharacteristic(ch));
    }
    Ok(w.a.pow(3).scale_int(4).add(&w.b.pow(2).scale_int(27))?)
}

fn check_scan_field(m: Modulus) -> Result<(), WeierstrassError> {
    let p = m.get();
    if p == 2 || p == 3 {
        return Err(WeierstrassError::BadCharacteristic(p as u64));
    }
    if p > MAX_SCAN_PRIME {
        return Err(WeierstrassError::PrimeTooLarge(p));
    }
    Ok(())
}

/// Projective points of `P^2(F_p)` normalized with first nonzero coordinate 1,
/// in lexicographic order: `(0:0:1)`, then `(0:1:b)`, then `(1:a:b)`.
pub fn projective_points(p: u32) -> Vec<[u32; 3]> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    pts.push([0, 0, 1]);
    for b in 0..p {
        pts.push([0, 1, b]);
    }
    for a in 0..p {
        for b in 0..p {
            pts.push([1, a, b]);
        }
    }
    pts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCertificate {
    pub holds: bool,
    pub p: u32,
    pub points_scanned: usize,
    /// Lexicographically smallest failing point.
    pub witness: Option<[u32; 3]>,
    pub caveat: &'static str,
}

/// First point (in the canonical order) satisfying `bad`; parallel but deterministic.
fn scan<B>(p: u32, max_degree: usize, bad: B) -> ScanCertificate
where
    B: Fn(&PowerTable) -> bool + Sync,
{
    let pts = projective_points(p);
    let witness = pts
        .par_iter()
        .find_first(|x| {
            let t = PowerTable::new([x[0] as u64, x[1] as u64, x[2] as u64], max_degree, p as u64);
            bad(&t)
        })
        .copied();
    ScanCertificate {
        holds: witness.is_none(),
        p,
        points_scanned: pts.len(),
        witness,
        caveat: RATIONAL_POINTS_CAVEAT,
    }
}

fn compiled_with_gradient(f: &HomogPoly<Fp>) -> [CompiledPoly; 4] {
    let [d0, d1, d2] = f.gradient();
    [f.compile(), d0.compile(), d1.compile(), d2.compile()]
}

/// No `F_p`-point where `f` and its three partials vanish together.
pub fn is_smooth_curve(f: &HomogPoly<Fp>) -> Result<ScanCertificate, WeierstrassError> {
    check_scan_field(*f.ctx())?;
    if f.is_zero() {
        return Err(WeierstrassError::ZeroPolynomial);
    }
    let c = compiled_with_gradient(f);
    Ok(scan(f.ctx().get(), f.degree() as usize, |t| {
        c.iter().all(|g| g.eval(t) == 0)
    }))
}

/// At every common `F_p`-zero of `f` and `g` the gradients are independent.
pub fn transversal_intersection(
    f: &HomogPoly<Fp>,
    g: &HomogPoly<Fp>,
) -> Result<ScanCertificate, WeierstrassError> {
    check_scan_field(*f.ctx())?;
    if f.is_zero() || g.is_zero() {
        return Err(WeierstrassError::ZeroPolynomial);
    }
    let p = f.ctx().get() as u64;
    let cf = compiled_with_gradient(f);
    let cg = compiled_with_gradient(g);
    let d = f.degree().max(g.degree()) as usize;
    Ok(scan(p as u32, d, |t| {
        if cf[0].eval(t) != 0 || cg[0].eval(t) != 0 {
            return false;
        }
        let u = [cf[1].eval(t), cf[2].eval(t), cf[3].eval(t)];
        let v = [cg[1].eval(t), cg[2].eval(t), cg[3].eval(t)];
        // dependent iff every 2x2 minor vanishes
        (0..3).all(|i| {
            let j = (i + 1) % 3;
            (u[i] * v[j] % p + p - u[j] * v[i] % p).is_multiple_of(p)
        })
    }))
}

/// Singular `F_p`-points of the discriminant lying off `a = b = 0`.
///
/// `4a^3 + 27b^2` is singular wherever `a` and `b` both vanish, so this is the
/// check that separates those forced cusps from accidental singularities.
pub fn smooth_off_base_locus(w: &WeierstrassFamily<Fp>) -> Result<ScanCertificate, WeierstrassError> {
    let delta = discriminant(w)?;
    check_scan_field(*delta.ctx())?;
    if delta.is_zero() {
        return Err(WeierstrassError::ZeroPolynomial);
    }
    let c = compiled_with_gradient(&delta);
    let (a, b) = (w.a.compile(), w.b.compile());
    Ok(scan(delta.ctx().get(), delta.degree() as usize, |t| {
        c.iter().all(|g| g.eval(t) == 0) && !(a.eval(t) == 0 && b.eval(t) == 0)
    }))
}

/// `F_p`-points where `a` and `b` both vanish.
pub fn base_locus_points(w: &WeierstrassFamily<Fp>) -> Vec<[u32; 3]> {
    let p = w.a.ctx().get();
    let (a, b) = (w.a.compile(), w.b.compile());
    let d = w.b.degree() as usize;
    projective_points(p)
        .into_par_iter()
        .filter(|x| {
            let t = PowerTable::new([x[0] as u64, x[1] as u64, x[2] as u64], d, p as u64);
            a.eval(&t) == 0 && b.eval(&t) == 0
        })
        .collect()
}

/// `sum(dims) - rescalings - 8`, the 8 being `dim PGL(3)`.
pub fn param_count(dims: &[u64], rescalings: u64) -> i64 {
    dims.iter().sum::<u64>() as i64 - rescalings as i64 - 8
}

/// `h^0(P^2, O(d))` for each degree.
pub fn recomputed_dims(degrees: &[i64]) -> Vec<u64> {
    degrees
        .iter()
        .map(|&d| coh_line::<i64>(d).h0 as u64)
        .collect()
}

/// One parameter count as printed and as recomputed from `h^0` on the plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamCountComparison {
    pub label: &'static str,
    pub degrees: Vec<i64>,
    pub rescalings: u64,
    pub printed_dims: Vec<u64>,
    pub printed_total: i64,
    /// Total as printed next to the arithmetic.
    pub stated_total: i64,
    pub recomputed_dims: Vec<u64>,
    pub recomputed_total: i64,
}

impl ParamCountComparison {
    pub fn new(
        label: &'static str,
        degrees: Vec<i64>,
        rescalings: u64,
        printed_dims: Vec<u64>,
        stated_total: i64,
    ) -> Self {
        let rec = recomputed_dims(&degrees);
        ParamCountComparison {
            label,
            stated_total,
            printed_total: param_count(&printed_dims, rescalings),
            recomputed_total: param_count(&rec, rescalings),
            recomputed_dims: rec,
            degrees,
            rescalings,
            printed_dims,
        }
    }

    pub fn agrees(&self) -> bool {
        self.printed_dims == self.recomputed_dims
    }

    /// The printed dims reproduce the printed total.
    pub fn printed_arithmetic_holds(&self) -> bool {
        self.printed_total == self.stated_total
    }
}

/// Counts printed alongside the dimension arithmetic they rest on.
pub fn printed_param_counts() -> Vec<ParamCountComparison> {
    vec![
        ParamCountComparison::new("weierstrass-cy3", vec![12, 18], 1, vec![13, 19], 23),
        ParamCountComparison::new("fibre-product", vec![4, 6, 8, 12], 2, vec![5, 7, 9, 13], 24),
        ParamCountComparison::new("cy4-fold", vec![0, 1, 2, 3, 4, 5, 6], 1, vec![1, 3, 6, 10, 15, 21, 28], 75),
        ParamCountComparison::new("hilb2-k3", vec![6], 1, vec![28], 19),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub discriminant_degree: u32,
    pub smooth: ScanCertificate,
    pub smooth_off_base_locus: bool,
    pub base_locus_points: Vec<[u32; 3]>,
    /// Present in fibre-product mode.
    pub transversal: Option<ScanCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplingReport {
    pub l: u32,
    pub l2: Option<u32>,
    pub p: u32,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
}

impl SamplingReport {
    pub fn smooth_passes(&self) -> usize {
        self.trials.iter().filter(|t| t.smooth.holds).count()
    }

    pub fn smooth_off_base_passes(&self) -> usize {
        self.trials.iter().filter(|t| t.smooth_off_base_locus).count()
    }

    pub fn transversal_passes(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| t.transversal.as_ref().is_some_and(|c| c.holds))
            .count()
    }

    /// Every singular point found lies on `a = b = 0`.
    pub fn failures_explained_by_base_locus(&self) -> bool {
        self.trials.iter().all(|t| match t.smooth.witness {
            None => true,
            Some(w) => t.smooth_off_base_locus && t.base_locus_points.contains(&w),
        })
    }
}

/// Seeded sampling of random families; with `l2`, a second independent family
/// is drawn each trial and the two discriminants are tested for transversality.
pub fn sample_families(
    l: u32,
    l2: Option<u32>,
    p: u32,
    seed: u64,
    trials: usize,
) -> Result<SamplingReport, WeierstrassError> {
    if l < 1 || l2 == Some(0) {
        return Err(WeierstrassError::NonPositiveDegree(0));
    }
    let m = Modulus::new(p).map_err(|_| WeierstrassError::BadCharacteristic(p as u64))?;
    check_scan_field(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let w = WeierstrassFamily::random(m, l, &mut rng);
        let second = l2.map(|l2| WeierstrassFamily::random(m, l2, &mut rng));
        let delta = discriminant(&w)?;
        let smooth = is_smooth_curve(&delta)?;
        let transversal = match &second {
            Some(w2) => Some(transversal_intersection(&delta, &discriminant(w2)?)?),
            None => None,
        };
        out.push(TrialRecord {
            trial,
            discriminant_degree: delta.degree(),
            smooth_off_base_locus: smooth_off_base_locus(&w)?.holds,
            base_locus_points: base_locus_points(&w),
            smooth,
            transversal,
        });
    }
    Ok(SamplingReport {
        l,
        l2,
        p,
        seed,
        trials: out,
    })
}
