//! Numerical laboratory for the real eigenvalues of matrix-valued Brownian
//! motion (the real Ginibre evolution).
//!
//! The crate has three layers that can be cross-checked against each other:
//!
//! * [`process`] + [`spectral`] + [`estimators`]: Monte Carlo simulation of
//!   the matrix process, its real eigenvalues and the associated spin
//!   variables, with reproducible parallel sampling.
//! * [`exact`]: closed forms and quadrature for the finite-`N` two-time
//!   modified density, its large-`N` scaling limits, and the erfc spin-spin
//!   correlation law.
//! * [`pfaffian`]: fixed-time Pfaffian point-process formulas, Haar unitary
//!   sampling and the Monte Carlo check of the localizing group integral.
//!
//! The `ginevo` binary exposes the same functionality as subcommands that
//! write CSV data plus a JSON run manifest; see the `examples/` directory for
//! one runnable program per capability.
//!
//! Convention used throughout: matrix entries are independent Brownian
//! motions with variance `t/2` at time `t` (so at `t = 1` the matrix is a
//! real Ginibre draw with `N(0, 1/2)` entries). Many references use variance
//! `t` instead; all formulas here are tied to the `t/2` normalization.

// `!(x > 0.0)` is used deliberately throughout argument validation so that
// NaN inputs are rejected along with out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod pfaffian;
pub mod process;
pub mod quad;
pub mod rng;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use process::{MatrixSample, PathTimes};
pub use rng::SeedSpec;
pub use spectral::Spectrum;
