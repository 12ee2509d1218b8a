//! Block maxima estimation for heavy-tailed data.
//!
//! The crate extracts disjoint block maxima from a series, fits the
//! two-parameter Fréchet distribution by maximum likelihood, provides the
//! Hill estimator as a peaks-over-threshold competitor, evaluates the
//! closed-form asymptotic bias/variance machinery of the block maxima MLE,
//! and runs seeded Monte Carlo bias/variance/MSE studies.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `blockmax` binary for the command-line interface.

// `!(x > 0.0)` is used throughout to reject NaN together with non-positive
// values; index loops over the small fixed-size matrices read fine as-is.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod blocks;
pub mod error;
pub mod frechet;
pub mod hill;
pub mod rng;
pub mod simulate;
pub mod solver;
pub mod special;
pub mod study;

pub use error::{Error, Result};
pub use frechet::{FrechetParams, Sample};
pub use solver::{fit, FitResult, SolverOptions};
