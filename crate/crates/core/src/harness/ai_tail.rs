use serde::Serialize;

use crate::arrangement::PairClass;
use crate::distributions::{gamma_convolution_cdf, ConvolutionSpec};
use crate::error::{Error, Result};

/// Tail probabilities `P(Σ λ_i G_{α_i, 1} ≥ c)` of two weighted gamma sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailComparison {
    pub tail1: f64,
    pub tail2: f64,
    /// Sum of the two certified CDF errors.
    pub error: f64,
    /// `tail1 ≤ tail2` up to `tol` and the certified error.
    pub holds: bool,
}

/// `λ_i G_{α_i, 1}` is gamma with rate `1/λ_i`.
fn weighted_sum(pair: &PairClass) -> Result<ConvolutionSpec> {
    let weights = pair.y().as_slice();
    if let Some(w) = weights.iter().find(|&&w| !(w > 0.0)) {
        return Err(Error::InvalidParameter(format!("weight {w} must be positive")));
    }
    let rates: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();
    ConvolutionSpec::gamma(pair.x().as_slice(), &rates)
}

/// Compares `P(Σ λ_{1i} G_{α_{1i},1} ≥ c)` with `P(Σ λ_{2i} G_{α_{2i},1} ≥ c)`
/// for pairs `(shapes, weights)`. The tail is arrangement increasing, so the
/// comparison holds whenever `pair1 ≤^a pair2`.
pub fn check_ai_tail(pair1: &PairClass, pair2: &PairClass, c: f64, tol: f64, tail_cap: f64) -> Result<TailComparison> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("threshold {c} must be positive")));
    }
    let g1 = gamma_convolution_cdf(&weighted_sum(pair1)?, &[c], tail_cap)?;
    let g2 = gamma_convolution_cdf(&weighted_sum(pair2)?, &[c], tail_cap)?;
    let (tail1, tail2) = (1.0 - g1.cdf[0], 1.0 - g2.cdf[0]);
    let error = g1.error[0] + g2.error[0];
    Ok(TailComparison {
        tail1,
        tail2,
        error,
        holds: tail1 <= tail2 + tol + error,
    })
}
