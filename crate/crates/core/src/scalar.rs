//! Scalar and coefficient traits.
//!
//! Intersection numbers are always computed exactly as [`Rational`]. Everything
//! built on top of them (classes, interpolation, series) is generic over a
//! [`Scalar`] field, so the same code runs over big rationals, machine-sized
//! rationals or floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A field that exact rationals embed into.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_big(n: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()))
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

macro_rules! impl_scalar_ratio {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn from_rational(q: &Rational) -> Self {
                let n: $int = q.numer().try_into().expect("numerator overflows machine rational");
                let d: $int = q.denom().try_into().expect("denominator overflows machine rational");
                Ratio::new(n, d)
            }
        }
    )*};
}
impl_scalar_ratio!(i64, i128);

macro_rules! impl_scalar_float {
    ($($float:ty),*) => {$(
        impl Scalar for $float {
            fn from_rational(q: &Rational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $float
            }
        }
    )*};
}
impl_scalar_float!(f32, f64);

/// Coefficient ring of a tautological class: a scalar field or a polynomial
/// ring over one. Only needs to be a Q-algebra.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn scale(&self, q: &Rational) -> Self;

    fn from_rational_coeff(q: &Rational) -> Self;
}

macro_rules! impl_coefficient_scalar {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn scale(&self, q: &Rational) -> Self {
                self.clone() * <$t as Scalar>::from_rational(q)
            }

            fn from_rational_coeff(q: &Rational) -> Self {
                <$t as Scalar>::from_rational(q)
            }
        }
    )*};
}
impl_coefficient_scalar!(BigRational, Ratio<i64>, Ratio<i128>, f32, f64);

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::parse_bytes(t.trim().as_bytes(), 10).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Odd double factorial `(2k - 1)!!`, with `(-1)!! = 1`.
pub(crate) fn odd_double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut m = 2 * k - 1;
    while m > 1 {
        acc *= BigInt::from(m);
        m -= 2;
    }
    acc
}
