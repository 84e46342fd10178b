//! Kauffman bracket skein theory at desk scale.
//!
//! Exact bracket evaluation of framed link diagrams, the relative skein
//! modules of the ball in their crossingless-matching bases, the framed
//! braid group action, and the gluing pairing / annular trace closure of
//! the two-ball and solid-region decomposition models, with
//! machine-checkable kernel relations.
//!
//! The whole crate is generic over the coefficient integer type through
//! [`num::Coeff`]; the aliases below fix the arbitrary-precision default.

pub mod braid;
pub mod bracket;
pub mod constants;
pub mod diagram;
pub mod error;
pub mod glue;
pub mod laurent;
pub mod linalg;
pub mod num;
pub mod random;
pub mod tlskein;

pub use error::{Error, Result};

use num_bigint::BigInt;

/// An exact element of `Z[A, A^-1]` with arbitrary-precision coefficients.
pub type Laurent = laurent::LaurentPoly<BigInt>;

/// A skein vector over `K_n(ball)` with arbitrary-precision coefficients.
pub type Skein = tlskein::SkeinVector<BigInt>;

/// An element of the annular closure with arbitrary-precision coefficients.
pub type Annular = glue::AnnularElement<BigInt>;
