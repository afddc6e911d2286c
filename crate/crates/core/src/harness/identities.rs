use serde::Serialize;

use crate::distributions::{
    convolve, coupled_pair_mixture_pmf, gamma_convolution_cdf, gamma_convolution_cdf_with_rate, gamma_mixture_cdf,
    gamma_upper_quantile, linear_grid, nb_pmf, nb_reduction, reg_lower_incomplete_gamma, shape_mixture_pmf,
    shifted_nb_convolution, CdfGrid, ConvolutionSpec, NegBinParams, TruncatedPMF,
};
use crate::error::{Error, Result};

/// Points on the CDF grids used by the gamma identities.
pub const IDENTITY_GRID_POINTS: usize = 64;

/// Largest absolute difference between the two sides of a distributional
/// identity, with the truncation mass both sides may have dropped.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub identity: String,
    pub residual: f64,
    pub tail_bound: f64,
    pub points: usize,
}

fn lattice_residual(name: &str, lhs: &TruncatedPMF, rhs: &TruncatedPMF) -> Result<IdentityResidual> {
    Ok(IdentityResidual {
        identity: name.into(),
        residual: lhs.linf_distance(rhs)?,
        tail_bound: lhs.tail_bound + rhs.tail_bound,
        points: lhs.len().max(rhs.len()),
    })
}

fn grid_residual(name: &str, lhs: &CdfGrid, rhs: &CdfGrid) -> Result<IdentityResidual> {
    let err = lhs.error.iter().zip(&rhs.error).map(|(a, b)| a + b).fold(0.0, f64::max);
    Ok(IdentityResidual {
        identity: name.into(),
        residual: lhs.max_abs_difference(rhs)?,
        tail_bound: err,
        points: lhs.len(),
    })
}

fn shifted_nb(alpha: f64, p: f64, tail_cap: f64) -> Result<TruncatedPMF> {
    Ok(nb_pmf(NegBinParams::new(alpha, p)?, tail_cap)?.shifted(alpha))
}

/// `Ñ_{L̃, p1}` with `L̃ = Ñ_{α, p2}` against `Ñ_{α, p1 p2}`.
pub fn nb_mixture_residual(alpha: f64, p1: f64, p2: f64, tail_cap: f64) -> Result<IdentityResidual> {
    let lhs = shape_mixture_pmf(&shifted_nb(alpha, p2, tail_cap)?, p1, tail_cap)?;
    let rhs = shifted_nb(alpha, p1 * p2, tail_cap)?;
    lattice_residual("nb-mixture", &lhs, &rhs)
}

/// `Σ Ñ_{α_i, p_i}` against `Ñ_{L̃, p}` with `L̃ = Σ Ñ_{α_i, p_i/p}`.
pub fn nb_mix_more_residual(spec: &ConvolutionSpec, p: f64, tail_cap: f64) -> Result<IdentityResidual> {
    let comps = spec.negbin_components()?;
    let pmax = comps.iter().map(|c| c.p()).fold(0.0, f64::max);
    if !(p > pmax && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "mixing success {p} must lie in ({pmax}, 1)"
        )));
    }
    let ratios: Vec<f64> = comps.iter().map(|c| c.p() / p).collect();
    let latent_spec = ConvolutionSpec::negbin(spec.shapes().as_slice(), &ratios)?;
    let lhs = shape_mixture_pmf(&shifted_nb_convolution(&latent_spec, tail_cap)?, p, tail_cap)?;
    let rhs = shifted_nb_convolution(spec, tail_cap)?;
    lattice_residual("nb-mix-more", &lhs, &rhs)
}

/// Latent success that turns the pair `c0 ± small` into `c0 ± big`.
pub fn pair_latent_success(c0: f64, small: f64, big: f64) -> Result<f64> {
    if !(0.0 <= small && small < big && big < c0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 ≤ small < big < c0, got small = {small}, big = {big}, c0 = {c0}"
        )));
    }
    Ok((c0 * c0 - big * big) / (c0 * c0 - small * small))
}

/// `Ñ_{L̃, c0+small} + Ñ_{L̃, c0−small}` (one shared latent shape) against
/// `Ñ_{α, c0+big} + Ñ_{α, c0−big}`.
pub fn nb_pair_residual(alpha: f64, c0: f64, small: f64, big: f64, tail_cap: f64) -> Result<IdentityResidual> {
    if c0 + big >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "c0 + big = {} must be below 1",
            c0 + big
        )));
    }
    let p = pair_latent_success(c0, small, big)?;
    let lhs = coupled_pair_mixture_pmf(alpha, c0, small, p, tail_cap)?;
    let rhs = convolve(
        &shifted_nb(alpha, c0 + big, tail_cap)?,
        &shifted_nb(alpha, c0 - big, tail_cap)?,
    )?;
    lattice_residual("nb-pair", &lhs, &rhs)
}

fn identity_grid(spec: &ConvolutionSpec, tail_cap: f64) -> Result<Vec<f64>> {
    Ok(linear_grid(
        gamma_upper_quantile(spec, 0.999, tail_cap)?,
        IDENTITY_GRID_POINTS,
    ))
}

/// `G_{L̃, β}` with `L̃ = Ñ_{α, p}` against `G_{α, pβ}` on a 64-point grid.
pub fn gamma_single_residual(alpha: f64, p: f64, beta: f64, tail_cap: f64) -> Result<IdentityResidual> {
    let target = ConvolutionSpec::gamma(&[alpha], &[p * beta])?;
    let grid = identity_grid(&target, tail_cap)?;
    let lhs = gamma_mixture_cdf(&shifted_nb(alpha, p, tail_cap)?, beta, &grid)?;
    let exact = grid
        .iter()
        .map(|&t| reg_lower_incomplete_gamma(alpha, p * beta * t))
        .collect::<Result<Vec<_>>>()?;
    let rhs = CdfGrid::new(grid.clone(), exact, vec![1e-14; grid.len()])?;
    grid_residual("gamma-single", &lhs, &rhs)
}

/// `Σ G_{α_i, β_i}` through shape mixtures at two different common rates
/// `β` (both above every `β_i`).
pub fn gamma_mix_more_residual(
    spec: &ConvolutionSpec,
    beta_a: f64,
    beta_b: f64,
    tail_cap: f64,
) -> Result<IdentityResidual> {
    for b in [beta_a, beta_b] {
        nb_reduction(spec, b)?;
    }
    let grid = identity_grid(spec, tail_cap)?;
    let lhs = gamma_convolution_cdf_with_rate(spec, &grid, tail_cap, beta_a)?;
    let rhs = gamma_convolution_cdf_with_rate(spec, &grid, tail_cap, beta_b)?;
    grid_residual("gamma-mix-more", &lhs, &rhs)
}

/// `G_{L̃, c0+small} + G_{L̃, c0−small}` (shared latent) against
/// `G_{α, c0+big} + G_{α, c0−big}`. The left side runs through the coupled
/// pair at rate `β = 2(c0 + big)`, the right side through the independent
/// shape-mixture CDF.
pub fn gamma_pair_residual(alpha: f64, c0: f64, small: f64, big: f64, tail_cap: f64) -> Result<IdentityResidual> {
    let p = pair_latent_success(c0, small, big)?;
    let beta = 2.0 * (c0 + big);
    let target = ConvolutionSpec::gamma(&[alpha, alpha], &[c0 + big, c0 - big])?;
    let grid = identity_grid(&target, tail_cap)?;
    let latent = coupled_pair_mixture_pmf(alpha, c0 / beta, small / beta, p, tail_cap)?;
    let lhs = gamma_mixture_cdf(&latent, beta, &grid)?;
    let rhs = gamma_convolution_cdf(&target, &grid, tail_cap)?;
    grid_residual("gamma-pair", &lhs, &rhs)
}
