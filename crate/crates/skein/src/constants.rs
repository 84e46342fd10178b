//! The distinguished ring elements of bracket skein theory, fixed in one
//! place so every module shares the same sign conventions.
//!
//! Conventions used throughout the crate:
//!
//! * `<empty diagram> = 1`, so a single trivial loop evaluates to
//!   `delta = -A^2 - A^-2` (unnormalized bracket).
//! * The *positive* kink multiplies the bracket by `-A^3`, the negative
//!   kink by `-A^-3`. A positive framing twist `t_i` contributes a
//!   positive kink.
//! * Crossings are recorded PD-style, counterclockwise from the incoming
//!   under-strand. The A-smoothing joins slots (0,1) and (2,3); the
//!   A^-1-smoothing joins slots (0,3) and (1,2).

use crate::laurent::LaurentPoly;
use crate::num::Coeff;

/// `delta = -A^2 - A^-2`, the value of a disjoint trivial loop. Forced by
/// resolving a kink with the skein relation and equating with the framing
/// relation: `A*delta + A^-1 = -A^3`.
pub fn loop_value<C: Coeff>() -> LaurentPoly<C> {
    LaurentPoly::from_terms([(2, -C::one()), (-2, -C::one())])
}

/// `-A^3`, the factor contributed by a positive kink.
pub fn pos_kink<C: Coeff>() -> LaurentPoly<C> {
    LaurentPoly::monomial(3, -C::one())
}

/// `-A^-3`, the factor contributed by a negative kink.
pub fn neg_kink<C: Coeff>() -> LaurentPoly<C> {
    LaurentPoly::monomial(-3, -C::one())
}
