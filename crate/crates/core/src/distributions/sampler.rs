use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use super::gamma::CdfGrid;
use super::params::{ConvolutionSpec, Family};
use crate::error::{Error, Result};

/// Sorted sample with its empirical CDF.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Fraction of the sample `≤ t`.
    pub fn cdf(&self, t: f64) -> f64 {
        self.samples.partition_point(|&s| s <= t) as f64 / self.samples.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// `max |F_n(t) − F(t)|` over the grid points.
    pub fn ks_distance(&self, grid: &CdfGrid) -> f64 {
        grid.points
            .iter()
            .zip(&grid.cdf)
            .map(|(&t, &f)| (self.cdf(t) - f).abs())
            .fold(0.0, f64::max)
    }
}

/// `n` draws of the convolution. Gamma components use shape/scale sampling
/// (scale `1/β`); negative binomial components are Poisson with a
/// gamma-distributed mean `G(α, q/p)`. Deterministic in `seed`.
pub fn mc_sampler(spec: &ConvolutionSpec, n: usize, seed: u64) -> Result<EmpiricalCdf> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = spec.shapes().as_slice();
    let scales = spec.scales().as_slice();
    let gammas: Vec<Gamma<f64>> = shapes
        .iter()
        .zip(scales)
        .map(|(&a, &s)| {
            let scale = match spec.family() {
                Family::Gamma => 1.0 / s,
                Family::NegBin => (1.0 - s) / s,
            };
            Gamma::new(a, scale).map_err(|e| Error::InvalidParameter(e.to_string()))
        })
        .collect::<Result<_>>()?;
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = 0.0;
        for g in &gammas {
            let v = g.sample(&mut rng);
            x += match spec.family() {
                Family::Gamma => v,
                Family::NegBin if v > 0.0 => Poisson::new(v)
                    .map_err(|e| Error::Numeric(e.to_string()))?
                    .sample(&mut rng),
                Family::NegBin => 0.0,
            };
        }
        samples.push(x);
    }
    samples.sort_by(f64::total_cmp);
    Ok(EmpiricalCdf { samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let s = ConvolutionSpec::gamma(&[1.5, 0.5], &[2.0, 0.7]).unwrap();
        assert_eq!(mc_sampler(&s, 1000, 7).unwrap(), mc_sampler(&s, 1000, 7).unwrap());
        assert_ne!(mc_sampler(&s, 1000, 7).unwrap(), mc_sampler(&s, 1000, 8).unwrap());
    }

    #[test]
    fn gamma_mean_within_four_sigma() {
        let (a, b) = (2.2, 1.3);
        let s = ConvolutionSpec::gamma(&[a], &[b]).unwrap();
        let n = 1_000_000;
        let e = mc_sampler(&s, n, 11).unwrap();
        let sd = (a / (b * b) / n as f64).sqrt();
        assert!((e.mean() - a / b).abs() < 4.0 * sd);
    }

    #[test]
    fn negbin_mean_within_four_sigma() {
        let s = ConvolutionSpec::negbin(&[1.7, 0.4], &[0.3, 0.8]).unwrap();
        let n = 200_000;
        let e = mc_sampler(&s, n, 3).unwrap();
        let sd = (s.variance() / n as f64).sqrt();
        assert!((e.mean() - s.mean()).abs() < 4.0 * sd);
        assert!(e.samples().iter().all(|v| v.fract() == 0.0));
    }
}
