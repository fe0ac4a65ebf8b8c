//! Stability certificates and power/bias analysis for discrete-time Lurye
//! systems with Zames-Falb multipliers.

// Guards written as `!(x > 0.0)` also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod lurye;
pub mod metrics;
pub mod ozf;
pub mod rational;
pub mod report;
mod roots;
pub mod suites;

pub use error::{Error, Result};
pub use roots::polynomial_roots;
