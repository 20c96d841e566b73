//! Scalar traits shared by the exact engines.
//!
//! Counting and lattice code is generic over [`ExactInt`] (machine integers or
//! `BigInt`); polynomial code is generic over [`Field`], implemented for exact
//! rationals and for prime fields with a runtime modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact signed integer usable for cohomology dimensions and lattice matrices.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Hash
{
    fn from_int(k: i64) -> Self {
        Self::from_i64(k).expect("every ExactInt holds an i64")
    }
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Hash
{
}

/// Binomial coefficient `C(n, k)` with `C(n, k) = 0` outside `0 <= k <= n`.
pub fn binomial<N: ExactInt>(n: i64, k: i64) -> N {
    if k < 0 || n < 0 || k > n {
        return N::zero();
    }
    let k = k.min(n - k);
    let mut acc = N::one();
    for i in 0..k {
        acc = acc * N::from_int(n - i) / N::from_int(i + 1);
    }
    acc
}

/// An exact field whose constants are built from a context value.
///
/// The context carries whatever is needed to materialise constants: nothing
/// for the rationals, the modulus for a prime field.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64_in(ctx: &Self::Ctx, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// Characteristic of the field; zero for the rationals.
    fn characteristic(ctx: &Self::Ctx) -> u64;
    /// Parse a literal such as `3`, `-2` or `5/7`.
    fn parse_in(ctx: &Self::Ctx, s: &str) -> Option<Self>;

    fn zero_in(ctx: &Self::Ctx) -> Self {
        Self::from_i64_in(ctx, 0)
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_i64_in(ctx, 1)
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_i64_in(&self.ctx(), n)
    }
}

impl<T: ExactInt> Field for Ratio<T> {
    type Ctx = ();

    fn ctx(&self) {}

    fn from_i64_in(_: &(), n: i64) -> Self {
        Ratio::from_integer(T::from_int(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn parse_in(_: &(), s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = T::from_i64(n.trim().parse().ok()?)?;
                let d = T::from_i64(d.trim().parse().ok()?)?;
                (!d.is_zero()).then(|| Ratio::new(n, d))
            }
            None => Some(Ratio::from_integer(T::from_i64(s.parse().ok()?)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulusError {
    #[error("{0} is not prime")]
    NotPrime(u32),
}

/// A prime modulus, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u32) -> Result<Self, ModulusError> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(ModulusError::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn elem(self, v: i64) -> Fp {
        let p = self.0 as i64;
        Fp {
            v: v.rem_euclid(p) as u32,
            p: self,
        }
    }

    /// All field elements in increasing canonical order.
    pub fn elements(self) -> impl Iterator<Item = Fp> {
        (0..self.0).map(move |v| Fp { v, p: self })
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_p`, stored as its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u32,
    p: Modulus,
}

impl Fp {
    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> Modulus {
        self.p
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let p = self.p.0 as u64;
        let mut base = self.v as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            v: acc as u32,
            p: self.p,
        }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v as u64 + rhs.v as u64;
        Fp {
            v: (s % self.p.0 as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p.0 as u64;
        Fp {
            v: ((self.v as u64 + p - rhs.v as u64) % p) as u32,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: (self.v as u64 * rhs.v as u64 % self.p.0 as u64) as u32,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: (self.p.0 - self.v) % self.p.0,
            p: self.p,
        }
    }
}

impl Field for Fp {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.p
    }

    fn from_i64_in(ctx: &Modulus, n: i64) -> Self {
        ctx.elem(n)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inverse(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p.0 as u64 - 2))
    }

    fn characteristic(ctx: &Modulus) -> u64 {
        ctx.0 as u64
    }

    fn parse_in(ctx: &Modulus, s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = ctx.elem(n.trim().parse().ok()?);
                let d = ctx.elem(d.trim().parse().ok()?);
                Some(n * d.inverse()?)
            }
            None => Some(ctx.elem(s.parse().ok()?)),
        }
    }
}

/// Convenience: `Ratio<T>` literal from numerator and denominator.
pub fn ratio<T: ExactInt>(n: i64, d: i64) -> Ratio<T> {
    Ratio::new(T::from_int(n), T::from_int(d))
}

/// Whether a rational number is an integer.
pub fn is_integral<T: ExactInt>(r: &Ratio<T>) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn binomials() {
        assert_eq!(binomial::<i64>(8, 2), 28);
        assert_eq!(binomial::<BigInt>(4, 0), BigInt::from(1));
        assert_eq!(binomial::<i64>(3, 5), 0);
        assert_eq!(binomial::<i64>(3, -1), 0);
    }

    #[test]
    fn prime_field_arithmetic() {
        let m = Modulus::new(7).unwrap();
        let a = m.elem(3);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!((a - m.elem(5)).value(), 5);
        assert_eq!(m.elem(-1).value(), 6);
        assert!(m.elem(0).inverse().is_none());
        assert_eq!(Fp::parse_in(&m, "1/2").unwrap().value(), 4);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(Modulus::new(9), Err(ModulusError::NotPrime(9)));
        assert!(Modulus::new(101).is_ok());
    }

    #[test]
    fn rational_literals() {
        let r: Ratio<i64> = Field::parse_in(&(), "-3/4").unwrap();
        assert_eq!(r, ratio(-3, 4));
        assert!(<Ratio<i64> as Field>::parse_in(&(), "1/0").is_none());
        assert!(is_integral(&ratio::<i64>(4, 2)));
    }
}
