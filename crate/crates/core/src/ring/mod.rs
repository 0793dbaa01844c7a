//! Exact arithmetic: big rationals, sparse polynomials over them, and the
//! [`Scalar`] union the rest of the crate computes with.
//!
//! Nothing in here touches floating point.

mod polynomial;
mod rational;
mod scalar;

pub use polynomial::{Monomial, Polynomial, Var};
pub use rational::Rational;
pub use scalar::Scalar;
