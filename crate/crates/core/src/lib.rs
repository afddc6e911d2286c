//! Partial orders on parameter pairs of gamma and negative binomial
//! convolutions, together with numeric certificates for the convolution
//! order and the usual stochastic order.
//!
//! The crate is organised in two layers:
//!
//! * the *parameter layer* decides and witnesses orders on vectors and
//!   vector pairs: [`majorization`], [`arrangement`] and [`rc_order`]
//!   (the reverse-coupled majorization order and its weak variant);
//! * the *distribution layer* ([`distributions`]) computes truncated lattice
//!   PMFs of negative binomial convolutions, shape mixtures, gamma
//!   convolution CDFs and the numeric order oracles.
//!
//! [`harness`] ties both layers together: it generates configurations that
//! satisfy the hypotheses of each comparison theorem and checks that the
//! implied stochastic order holds numerically.

// `!(v > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrangement;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod harness;
pub mod majorization;
pub mod rc_order;
pub mod verdict;

pub use arrangement::{PairClass, SwapMove};
pub use error::{Error, Result};
pub use majorization::{MajorizationMode, RealVector, TChain};
pub use verdict::{OrderVerdict, Violation};

/// Absolute tolerance for comparing user-scale parameters: `1e-12` scaled by
/// the largest absolute component involved (never below `1e-12`).
pub fn scaled_tolerance<'a>(vectors: impl IntoIterator<Item = &'a [f64]>) -> f64 {
    let scale = vectors
        .into_iter()
        .flat_map(|v| v.iter())
        .fold(1.0_f64, |m, v| m.max(v.abs()));
    BASE_TOLERANCE * scale
}

pub const BASE_TOLERANCE: f64 = 1e-12;
