//! Exact verification engine for four-folds with trivial canonical bundle
//! fibred by abelian surfaces over the projective plane.

pub mod citations;
pub mod classifier;
pub mod jacfib;
pub mod leray;
pub mod poly;
pub mod scalar;
pub mod sheafcalc;
pub mod snf;
pub mod torusquot;
pub mod weierstrass;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer used for cohomology dimensions.
pub type Int = BigInt;
/// Exact rationals.
pub type Rational = BigRational;
pub type Coh = sheafcalc::CohVector<Int>;
pub type Chern = sheafcalc::ChernPair<Int>;
pub type PolyQ = poly::HomogPoly<Rational>;
pub type PolyFp = poly::HomogPoly<scalar::Fp>;
