use super::params::NegBinParams;
use super::pmf::{nb_pmf, TruncatedPMF, MAX_SUPPORT};
use crate::error::{Error, Result};

/// Latent weights below this are dropped (and charged to the tail).
const WEIGHT_FLOOR: f64 = 1e-300;

fn accumulate(out: &mut Vec<f64>, start: usize, values: impl IntoIterator<Item = f64>) -> Result<()> {
    for (i, v) in values.into_iter().enumerate() {
        let k = start + i;
        if k >= out.len() {
            if k >= MAX_SUPPORT {
                return Err(Error::SupportTooLarge {
                    len: k + 1,
                    max: MAX_SUPPORT,
                });
            }
            out.resize(k + 1, 0.0);
        }
        out[k] += v;
    }
    Ok(())
}

/// Law of `Ñ_{L̃, p}`: the shifted negative binomial whose shape is the
/// latent value `offset + h` with probability `latent.probs[h]`.
///
/// The result lives on `latent.offset + ℤ≥0`; its tail bound is the latent
/// tail plus the per-shape truncation (each at most `tail_cap`).
pub fn shape_mixture_pmf(latent: &TruncatedPMF, p: f64, tail_cap: f64) -> Result<TruncatedPMF> {
    if latent.offset <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "latent shapes start at {} and must be positive",
            latent.offset
        )));
    }
    let mut probs = Vec::new();
    let mut tail = latent.tail_bound;
    for (h, &w) in latent.probs.iter().enumerate() {
        if w < WEIGHT_FLOOR {
            tail += w.max(0.0);
            continue;
        }
        let comp = nb_pmf(NegBinParams::new(latent.point(h), p)?, tail_cap)?;
        tail += w * comp.tail_bound;
        // Ñ = shape + N, and shape = offset + h
        accumulate(&mut probs, h, comp.probs.iter().map(|v| w * v))?;
    }
    Ok(TruncatedPMF {
        offset: latent.offset,
        probs,
        tail_bound: tail,
    })
}

/// PMF of `N_{a, p1} + N_{a, p2}` through the three-term recurrence for the
/// coefficients of `(1 − s t + r t²)^{−a}`, `s = q1 + q2`, `r = q1 q2`,
/// scaled by `weight·(p1 p2)^a`. Runs in logs where the head would underflow.
/// Stops once the produced mass reaches `weight·(1 − tail_cap)`.
fn pair_component(a: f64, p1: f64, p2: f64, weight: f64, tail_cap: f64) -> Result<Vec<f64>> {
    let (q1, q2) = (1.0 - p1, 1.0 - p2);
    let (s, r) = (q1 + q2, q1 * q2);
    let mut log_scale = a * (p1 * p2).ln() + weight.ln();
    let target = 1.0 - tail_cap;
    let mean = a * (q1 / p1 + q2 / p2);
    let (mut g_prev, mut g) = (0.0_f64, 1.0_f64);
    let mut out = Vec::new();
    let mut mass = 0.0;
    for k in 0.. {
        let v = (g.ln() + log_scale).exp();
        out.push(v);
        mass += v;
        if mass >= weight * target && k as f64 > mean {
            break;
        }
        if out.len() >= MAX_SUPPORT {
            return Err(Error::SupportTooLarge {
                len: out.len(),
                max: MAX_SUPPORT,
            });
        }
        let kf = k as f64;
        let next = ((s * kf + a * s) * g - (r * (kf - 1.0) + 2.0 * a * r) * g_prev) / (kf + 1.0);
        g_prev = g;
        g = next;
        if g > 1e200 {
            g *= 1e-200;
            g_prev *= 1e-200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        } else if g < 1e-200 && g > 0.0 {
            g *= 1e200;
            g_prev *= 1e200;
            log_scale -= 200.0 * std::f64::consts::LN_10;
        }
    }
    Ok(out)
}

/// Law of `Ñ_{L̃, c0+λ1} + Ñ_{L̃, c0−λ1}` where both summands use the *same*
/// realization of the latent shape `L̃ = Ñ_{α, p}`.
///
/// The result lives on `2α + ℤ≥0`. The tail bound is the latent tail plus
/// the mass deficit of each conditional pair.
pub fn coupled_pair_mixture_pmf(alpha: f64, c0: f64, lambda1: f64, p: f64, tail_cap: f64) -> Result<TruncatedPMF> {
    let (s1, s2) = (c0 + lambda1, c0 - lambda1);
    for s in [s1, s2] {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParameter(format!("c0 ± λ1 = {s} outside (0, 1)")));
        }
    }
    let latent = nb_pmf(NegBinParams::new(alpha, p)?, tail_cap)?;
    let mut probs = Vec::new();
    let mut tail = latent.tail_bound;
    for (h, &w) in latent.probs.iter().enumerate() {
        if w < WEIGHT_FLOOR {
            tail += w.max(0.0);
            continue;
        }
        let a = alpha + h as f64;
        let comp = pair_component(a, s1, s2, w, tail_cap)?;
        let produced: f64 = comp.iter().sum();
        tail += (w - produced).max(0.0) + comp.len() as f64 * f64::EPSILON * w;
        // pair shift is 2a = 2α + 2h
        accumulate(&mut probs, 2 * h, comp)?;
    }
    Ok(TruncatedPMF {
        offset: 2.0 * alpha,
        probs,
        tail_bound: tail,
    })
}
