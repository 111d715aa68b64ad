//! Multiplicative (geometric) calculus and curve geometry in `ℝ*³`.

// `!(x > 0.0)` is how NaN gets rejected alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// series recurrences read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod cli;
pub mod curve;
pub mod error;
pub mod expr;
pub mod jet;
pub mod quadrature;
pub mod scalar;
pub mod vector;

pub use error::{Error, Result};
pub use expr::Expr;
pub use scalar::MulScalar;
pub use vector::MulVector3;
