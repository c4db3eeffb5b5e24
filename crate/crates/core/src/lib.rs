//! Tautological classes on moduli spaces of stable curves.

#![allow(clippy::type_complexity, clippy::too_many_arguments, clippy::needless_range_loop)]

pub mod error;
pub mod intersection;
pub mod pixton;
pub mod poly;
pub mod relative;
pub mod scalar;
pub mod stable_graphs;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use scalar::{Coefficient, Rational, Scalar};
pub use intersection::{DecoratedStratum, TautClass};
pub use stable_graphs::StableGraph;

/// Classes with exact rational coefficients.
pub type TautClassQ = TautClass<Rational>;
/// Classes whose coefficients are polynomials in `r`.
pub type TautClassR = TautClass<Polynomial<Rational>>;
/// Classes over 64-bit machine rationals.
pub type TautClassQ64 = TautClass<num_rational::Ratio<i64>>;
/// Floating-point classes.
pub type TautClassF64 = TautClass<f64>;
