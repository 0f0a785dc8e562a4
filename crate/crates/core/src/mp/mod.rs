//! Multiprecision binary floating point on top of `BigInt` mantissas.
//!
//! Two deliberate limitations keep this layer small: rounding is truncation
//! toward zero, and there are no transcendental functions.  Everything the
//! rest of the crate needs reduces to field operations plus square roots;
//! anything that must be *certified* (root enclosures, membership tests)
//! re-derives its bound in exact rational arithmetic rather than trusting
//! these floats.

mod complex;
mod real;

pub use complex::MpComplex;
pub use real::MpReal;
