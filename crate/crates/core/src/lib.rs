//! Executable codings, theories and incompleteness constructions over the
//! language `{0, s, <, =, tau, pi}`.

pub mod codec;
pub mod constructions;
pub mod proof;
pub mod syntax;
pub mod theory;
pub mod tpl;

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;
