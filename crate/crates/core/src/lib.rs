//! Exact computation of degenerate special numbers: Stirling numbers of both
//! kinds, Bell polynomials, Euler polynomials, derangement numbers and the
//! degenerate gamma function, over the rationals or with λ as an
//! indeterminate.
//!
//! ```
//! use degen::stirling::deg_stirling2_triangle;
//! use degen::Scalar;
//!
//! let t = deg_stirling2_triangle(3, &Scalar::lambda());
//! assert_eq!(t.get(2, 1), Scalar::one() - Scalar::lambda());
//! ```

pub mod error;
pub mod ring;
pub use error::{Error, Result};
pub use ring::{Polynomial, Rational, Scalar, Var};
pub mod sequences;
pub mod series;
pub mod stirling;
pub mod bell;
pub mod analytic;
pub mod verify;
pub mod cli;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/scalars.md")]
mod book_scalars {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/series.md")]
mod book_series {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/stirling.md")]
mod book_stirling {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bell.md")]
mod book_bell {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/analytic.md")]
mod book_analytic {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verify.md")]
mod book_verify {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
