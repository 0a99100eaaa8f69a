//! Numerics for the discrete-series oscillator model built on the Lie
//! superalgebra sl(2|1).
//!
//! The crate is organised bottom-up:
//!
//! * [`hyperfun`]: Pochhammer symbols, terminating hypergeometric series,
//!   Meixner and Laguerre polynomials, tail-rule summation.
//! * [`rep`]: truncated matrices of the representation and structure checks.
//! * [`spectral`]: the Jacobi matrix of the position operator, its four
//!   spectral classes, supports, weights and orthogonal polynomials.
//! * [`wavefun`]: normalized position and momentum wavefunctions.
//! * [`fourier`]: Fourier kernels in closed form and as defining series.
//! * [`paraboson`]: the osp(1|2) paraboson layer.
//! * [`cli`]: command-line front end and output formats.
//!
//! Batch workloads accept an [`Execution`] so that the rayon path and the
//! sequential path can be compared directly; both produce identical results.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dd;
pub mod eigen;
pub mod fourier;
pub mod hyperfun;
pub mod par;
pub mod paraboson;
pub mod quadrature;
pub mod rep;
pub mod report;
pub mod spectral;
pub mod wavefun;

pub use par::Execution;
pub use rep::RepParams;
pub use report::{Check, Report};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension must be at least {min}, got {got}")]
    Dimension { min: usize, got: usize },
    #[error("x = {x} is not on the spectrum: {reason}")]
    OffSpectrum { x: f64, reason: String },
    #[error("point of class {point} used with parameters of class {params}")]
    ClassMismatch { point: String, params: String },
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("{0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
