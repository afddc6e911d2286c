//! Truncated lattice laws for negative binomial sums, shape mixtures, gamma
//! convolution CDFs, and the numeric oracles for the convolution and usual
//! stochastic orders.
//!
//! Every law carries an explicit error budget: `TruncatedPMF::tail_bound`
//! bounds the omitted mass, `CdfGrid::error` bounds each CDF value.

mod deconv;
mod export;
mod gamma;
mod mixture;
mod oracles;
mod params;
mod pmf;
mod sampler;

pub use deconv::{deconvolve, levy_coefficients_nonnegative, nb_deconvolution, ConvEvidence, Deconvolution};
pub use export::{fmt17, write_grid_survival_csv, write_pmf_survival_csv, CSV_HEADER};
pub use gamma::{
    default_gamma_grid, default_mixture_rate, gamma_convolution_cdf, gamma_convolution_cdf_with_rate, gamma_latent,
    gamma_mixture_cdf, gamma_upper_quantile, linear_grid, nb_reduction, reg_lower_incomplete_gamma, CdfGrid,
};
pub use mixture::{coupled_pair_mixture_pmf, shape_mixture_pmf};
pub use oracles::{lr_monotone_check, survival_dominance_check, LawRef, SurvivalMargin};
pub use params::{ConvolutionSpec, Family, GammaParams, NegBinParams};
pub use pmf::{
    convolve, nb_convolution, nb_pmf, pgf_eval, shifted_nb_convolution, TruncatedPMF, DEFAULT_TAIL_CAP, MAX_SUPPORT,
};
pub use sampler::{mc_sampler, EmpiricalCdf};
