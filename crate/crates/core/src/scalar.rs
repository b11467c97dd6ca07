//! Scalar abstractions.
//!
//! Symbolic code is generic over a coefficient [`Ring`] (products and sums of
//! permutations only ever need ring operations) or a [`Field`] (Magnus
//! coefficients carry factorial denominators). Numerical code is generic over
//! a [`Real`] floating point type, with complex matrix entries built on top.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Coefficients of formal linear combinations.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_i64(value: i64) -> Self;
}

/// Ring with exact (or floating) division, able to absorb exact rationals.
pub trait Field: Ring + Div<Output = Self> {
    fn from_rational(value: &Rational) -> Self;

    /// Nearest double, used when symbolic weights reach the numerical layer.
    fn to_f64(&self) -> f64;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

macro_rules! impl_int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(value: i64) -> Self {
                value as $t
            }
        }
    )*};
}

impl_int_ring!(i32, i64, i128);

impl Ring for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }
}

impl Ring for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Field for BigRational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_small_ratio {
    ($($t:ty => $conv:ident),*) => {$(
        impl Ring for Ratio<$t> {
            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(value as $t)
            }
        }

        impl Field for Ratio<$t> {
            /// Panics if the reduced fraction does not fit the machine integer.
            fn from_rational(value: &Rational) -> Self {
                match (value.numer().$conv(), value.denom().$conv()) {
                    (Some(n), Some(d)) => Ratio::new(n, d),
                    _ => panic!("rational {value} overflows {}", stringify!($t)),
                }
            }

            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
        }
    )*};
}

impl_small_ratio!(i64 => to_i64, i128 => to_i128);

macro_rules! impl_float_field {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(value: i64) -> Self {
                value as $t
            }
        }

        impl Field for $t {
            fn from_rational(value: &Rational) -> Self {
                ToPrimitive::to_f64(value).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    )*};
}

impl_float_field!(f32, f64);

/// Floating point scalar for the numerical layer: f32 or f64.
pub trait Real:
    num_traits::Float + FromPrimitive + Default + Debug + Send + Sync + 'static
{
    /// Lossy conversion from f64 constants (Padé coefficients, tolerances).
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(9), BigInt::from(362_880));
    }

    #[test]
    fn field_conversions_agree() {
        let r = Rational::new(BigInt::from(-5), BigInt::from(12));
        assert_eq!(<Ratio<i64> as Field>::from_rational(&r), Ratio::new(-5, 12));
        assert!((<f64 as Field>::from_rational(&r) + 5.0 / 12.0).abs() < 1e-16);
        assert_eq!(<Rational as Field>::ratio(2, -4), Rational::new(BigInt::from(-1), BigInt::from(2)));
    }
}
