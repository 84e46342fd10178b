//! Coefficient scalars for the ring `Z[A, A^-1]`.
//!
//! Everything downstream is generic over the integer type used for
//! coefficients. The default alias at the crate root uses [`BigInt`],
//! since state-sum coefficients grow with crossing count and a silent
//! fixed-width overflow would corrupt results.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};

/// An exact integer scalar usable as a Laurent-polynomial coefficient.
pub trait Coeff:
    Clone + Eq + Hash + fmt::Debug + fmt::Display + Signed + Integer + FromPrimitive
{
    /// Exact conversion into a big rational, for evaluation maps.
    fn to_big_rational(&self) -> BigRational;

    /// Parse from a plain decimal string (with optional sign).
    fn parse_decimal(s: &str) -> Option<Self> {
        <Self as num_traits::Num>::from_str_radix(s, 10).ok()
    }
}

impl Coeff for i64 {
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Coeff for i128 {
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Coeff for BigInt {
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}
