//! Scalar abstractions.
//!
//! Everything that produces a rational number (Casimir values, conformal
//! weights, theta levels, boundary coefficients) is written against
//! [`ExactScalar`], so callers can pick `Ratio<i64>` for speed or
//! `BigRational` when they want no overflow at all. The floating point
//! Verlinde oracle is generic over [`num_traits::Float`] instead.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field element.
pub trait ExactScalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn is_integral(&self) -> bool;

    /// The value as an `i64`, if it is an integer that fits.
    fn to_i64_exact(&self) -> Option<i64>;

    /// `p/q` rendering, or just `p` for integers.
    fn to_fraction_string(&self) -> String {
        format!("{self}")
    }
}

macro_rules! impl_exact_ratio {
    ($int:ty) => {
        impl ExactScalar for Ratio<$int> {
            fn from_int(value: i64) -> Self {
                Ratio::from_integer(<$int>::from(value))
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }

            fn to_i64_exact(&self) -> Option<i64> {
                if self.is_integer() {
                    self.numer().to_i64()
                } else {
                    None
                }
            }
        }
    };
}

impl_exact_ratio!(i64);
impl_exact_ratio!(i128);
impl_exact_ratio!(BigInt);
