use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::params::{ConvolutionSpec, Family};
use super::pmf::{shifted_nb_convolution, TruncatedPMF};
use crate::error::{Error, Result};

/// Absolute error allowance per incomplete-gamma evaluation.
const P_ERR: f64 = 1e-13;

/// Regularized lower incomplete gamma `P(a, x)`: power series for
/// `x < a + 1`, Lentz continued fraction for the complement otherwise.
pub fn reg_lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) || !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "P(a, x) needs a > 0 and x ≥ 0, got a={a}, x={x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let log_front = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        let (mut term, mut sum, mut ap) = (1.0 / a, 1.0 / a, a);
        for _ in 0..100_000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        Ok((sum.ln() + log_front).exp().min(1.0))
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..100_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-17 {
                break;
            }
        }
        Ok((1.0 - (log_front + h.ln()).exp()).max(0.0))
    }
}

/// CDF values with a per-point absolute error bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfGrid {
    pub points: Vec<f64>,
    pub cdf: Vec<f64>,
    pub error: Vec<f64>,
}

impl CdfGrid {
    pub fn new(points: Vec<f64>, cdf: Vec<f64>, error: Vec<f64>) -> Result<Self> {
        Error::check_len(points.len(), cdf.len())?;
        Error::check_len(points.len(), error.len())?;
        if points.windows(2).any(|w| w[0] >= w[1]) || points.first().is_some_and(|&t| t < 0.0) {
            return Err(Error::InvalidParameter(
                "grid points must be nonnegative and strictly increasing".into(),
            ));
        }
        // rounding can leave tiny decreases; the bounds cover them
        let mut cdf: Vec<f64> = cdf.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
        for i in 1..cdf.len() {
            cdf[i] = cdf[i].max(cdf[i - 1]);
        }
        Ok(CdfGrid { points, cdf, error })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `P(X ≥ t)` at each grid point (continuous law).
    pub fn survival(&self) -> Vec<f64> {
        self.cdf.iter().map(|c| 1.0 - c).collect()
    }

    pub fn max_abs_difference(&self, other: &CdfGrid) -> Result<f64> {
        if self.points != other.points {
            return Err(Error::Precondition("grids differ".into()));
        }
        Ok(self
            .cdf
            .iter()
            .zip(&other.cdf)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// CDF of `G_{L̃, β}`: gamma with rate `β` and random shape
/// `latent.offset + h` (probability `latent.probs[h]`).
///
/// Walks `h` upward with `P(a+1, x) = P(a, x) − x^a e^{−x} / Γ(a+1)`,
/// re-anchoring every 64 steps.
pub fn gamma_mixture_cdf(latent: &TruncatedPMF, beta: f64, grid: &[f64]) -> Result<CdfGrid> {
    if !(beta > 0.0) || latent.offset <= 0.0 {
        return Err(Error::InvalidParameter(
            "mixture needs β > 0 and positive latent shapes".into(),
        ));
    }
    let mut cdf = Vec::with_capacity(grid.len());
    let mut error = Vec::with_capacity(grid.len());
    for &t in grid {
        if t < 0.0 {
            return Err(Error::InvalidParameter(format!("grid point {t} is negative")));
        }
        let x = beta * t;
        let (mut acc, mut p_val, mut log_d) = (0.0, 0.0, 0.0);
        for (h, &w) in latent.probs.iter().enumerate() {
            let a = latent.point(h);
            if h % 64 == 0 {
                p_val = reg_lower_incomplete_gamma(a, x)?;
                log_d = if x > 0.0 {
                    a * x.ln() - x - ln_gamma(a + 1.0)
                } else {
                    f64::NEG_INFINITY
                };
            }
            acc += w * p_val;
            p_val = (p_val - log_d.exp()).max(0.0);
            log_d += if x > 0.0 { x.ln() - (a + 1.0).ln() } else { 0.0 };
        }
        cdf.push(acc);
        error.push(latent.tail_bound + 64.0 * P_ERR + latent.len() as f64 * f64::EPSILON);
    }
    CdfGrid::new(grid.to_vec(), cdf, error)
}

/// Rate used for the shape-mixture representation: twice the largest rate.
pub fn default_mixture_rate(spec: &ConvolutionSpec) -> f64 {
    2.0 * spec.scales().as_slice().iter().fold(0.0_f64, |m, &b| m.max(b))
}

/// Latent shape law `Σ Ñ_{α_i, β_i/β}` (shifted, origin `R = Σ α_i`).
pub fn gamma_latent(spec: &ConvolutionSpec, beta: f64, tail_cap: f64) -> Result<TruncatedPMF> {
    let reduced = nb_reduction(spec, beta)?;
    shifted_nb_convolution(&reduced, tail_cap)
}

/// The negative binomial spec `(α_i, β_i/β)` behind a gamma spec.
pub fn nb_reduction(spec: &ConvolutionSpec, beta: f64) -> Result<ConvolutionSpec> {
    spec.expect_family(Family::Gamma)?;
    let ps: Vec<f64> = spec.scales().as_slice().iter().map(|b| b / beta).collect();
    if ps.iter().any(|&p| p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "common rate {beta} must exceed every component rate"
        )));
    }
    ConvolutionSpec::negbin(spec.shapes().as_slice(), &ps)
}

/// CDF of `Σ G_{α_i, β_i}` on `grid` through the shape mixture with common
/// rate [`default_mixture_rate`].
pub fn gamma_convolution_cdf(spec: &ConvolutionSpec, grid: &[f64], tail_cap: f64) -> Result<CdfGrid> {
    gamma_convolution_cdf_with_rate(spec, grid, tail_cap, default_mixture_rate(spec))
}

pub fn gamma_convolution_cdf_with_rate(
    spec: &ConvolutionSpec,
    grid: &[f64],
    tail_cap: f64,
    beta: f64,
) -> Result<CdfGrid> {
    let latent = gamma_latent(spec, beta, tail_cap)?;
    gamma_mixture_cdf(&latent, beta, grid)
}

/// A point `t` with `P(X ≤ t) ≥ level`, found by stepping out from the
/// mean in units of the standard deviation.
pub fn gamma_upper_quantile(spec: &ConvolutionSpec, level: f64, tail_cap: f64) -> Result<f64> {
    let (mean, sd) = (spec.mean(), spec.variance().sqrt());
    let mut upper = mean + 3.0 * sd;
    for _ in 0..256 {
        if gamma_convolution_cdf(spec, &[upper], tail_cap)?.cdf[0] >= level {
            return Ok(upper);
        }
        upper += sd;
    }
    Err(Error::Numeric(format!("no {level} quantile found below {upper}")))
}

/// `points` evenly spaced values on `[0, upper]`.
pub fn linear_grid(upper: f64, points: usize) -> Vec<f64> {
    let m = points.max(2);
    (0..m).map(|i| upper * i as f64 / (m - 1) as f64).collect()
}

/// Evenly spaced points on `[0, q_{0.999}]` of the larger-mean law, plus
/// both means.
pub fn default_gamma_grid(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    points: usize,
    tail_cap: f64,
) -> Result<Vec<f64>> {
    let big = if spec1.mean() >= spec2.mean() { spec1 } else { spec2 };
    let upper = gamma_upper_quantile(big, 0.999, tail_cap)?;
    let mut grid = linear_grid(upper, points);
    grid.push(spec1.mean());
    grid.push(spec2.mean());
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * upper);
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Gauss–Legendre quadrature of the gamma density on `[0, x]`;
    /// for `a < 1` the substitution `t = u^{1/a}` removes the singularity at 0.
    fn quadrature_p(a: f64, x: f64) -> f64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        // ∫_0^x t^{a−1} e^{−t} dt = (1/a) ∫_0^{x^a} e^{−u^{1/a}} du
        let smooth = a >= 1.0;
        let top = if smooth { x } else { x.powf(a) };
        let panels = 20_000;
        let h = top / panels as f64;
        let mut s = 0.0;
        for k in 0..panels {
            let mid = (k as f64 + 0.5) * h;
            for (z, w) in nodes {
                let u = mid + 0.5 * h * z;
                let f = if smooth {
                    u.powf(a - 1.0) * (-u).exp()
                } else {
                    (-u.powf(1.0 / a)).exp() / a
                };
                s += w * 0.5 * h * f;
            }
        }
        s / ln_gamma(a).exp()
    }

    #[test]
    fn exponential_case_and_limits() {
        for x in [0.01, 0.5, 1.0, 3.0, 30.0] {
            let p = reg_lower_incomplete_gamma(1.0, x).unwrap();
            assert!((p - (1.0 - (-x).exp())).abs() <= 1e-15);
        }
        assert_eq!(reg_lower_incomplete_gamma(2.0, 0.0).unwrap(), 0.0);
        assert!((reg_lower_incomplete_gamma(2.0, 1e4).unwrap() - 1.0).abs() < 1e-15);
        assert!(reg_lower_incomplete_gamma(0.0, 1.0).is_err());
        assert!(reg_lower_incomplete_gamma(1.0, -1.0).is_err());
    }

    #[test]
    fn against_quadrature() {
        for (a, x) in [(2.5, 2.5), (0.7, 0.3), (4.0, 7.5)] {
            let p = reg_lower_incomplete_gamma(a, x).unwrap();
            let q = quadrature_p(a, x);
            assert!((p - q).abs() < 1e-12 * q.max(1e-3), "a={a} x={x}: {p} vs {q}");
        }
    }

    #[test]
    fn single_exponential_component() {
        let s = ConvolutionSpec::gamma(&[1.0], &[1.5]).unwrap();
        let grid: Vec<f64> = (0..20).map(|i| i as f64 * 0.2).collect();
        let c = gamma_convolution_cdf(&s, &grid, 1e-13).unwrap();
        for (t, v) in grid.iter().zip(&c.cdf) {
            assert!((v - (1.0 - (-1.5 * t).exp())).abs() < 1e-11);
        }
    }

    #[test]
    fn single_component_mixture_matches_direct() {
        let s = ConvolutionSpec::gamma(&[2.3], &[0.7]).unwrap();
        let grid: Vec<f64> = (1..40).map(|i| i as f64 * 0.25).collect();
        let c = gamma_convolution_cdf_with_rate(&s, &grid, 1e-13, 3.1).unwrap();
        for (t, v) in grid.iter().zip(&c.cdf) {
            assert!((v - reg_lower_incomplete_gamma(2.3, 0.7 * t).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn rate_invariance() {
        let s = ConvolutionSpec::gamma(&[0.5, 1.7, 2.2], &[1.0, 0.4, 2.5]).unwrap();
        let grid = default_gamma_grid(&s, &s, 64, 1e-12).unwrap();
        let a = gamma_convolution_cdf_with_rate(&s, &grid, 1e-13, 5.0).unwrap();
        let b = gamma_convolution_cdf_with_rate(&s, &grid, 1e-13, 8.0).unwrap();
        assert!(a.max_abs_difference(&b).unwrap() <= 1e-9);
    }
}
