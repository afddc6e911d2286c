use serde::Serialize;

use super::params::ConvolutionSpec;
use super::pmf::{nb_convolution, TruncatedPMF};
use crate::error::{Error, Result};
use crate::verdict::{OrderVerdict, Violation};

const U: f64 = f64::EPSILON / 2.0;

/// Solution `z` of `f2 = f1 ⊛ z` on the lattice `offset + {0, …, K}`, with a
/// rounding-error bound per coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct Deconvolution {
    pub offset: f64,
    pub z: Vec<f64>,
    pub error_bounds: Vec<f64>,
    pub verdict: OrderVerdict<ConvEvidence>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvEvidence {
    pub min_coefficient: f64,
    pub mass: f64,
    /// The quotient generating function is `z_0·exp(series with
    /// nonnegative coefficients)`, so every coefficient is nonnegative, not
    /// only the computed ones.
    pub compound_poisson: bool,
}

impl Deconvolution {
    pub fn as_pmf(&self) -> TruncatedPMF {
        TruncatedPMF {
            offset: self.offset,
            probs: self.z.iter().map(|v| v.max(0.0)).collect(),
            tail_bound: (1.0 - self.z.iter().sum::<f64>()).max(0.0),
        }
    }
}

/// Forward substitution `z_k = (f2_k − Σ_{j≥1} f1_j z_{k−j}) / f1_0`.
///
/// `Holds` if every `z_k ≥ −tol` and the mass is consistent with the tails;
/// `Refuted` if some `z_k < −max(tol, error bound)`; `Unknown` otherwise.
/// The error bound grows with the coefficient sum of the reciprocal series
/// `1/f1`, which is large when `f1` has a small head.
pub fn deconvolve(f2: &TruncatedPMF, f1: &TruncatedPMF, tol: f64) -> Result<Deconvolution> {
    let f10 = f1.probs.first().copied().unwrap_or(0.0);
    if f10 <= 0.0 {
        return Err(Error::Precondition(
            "deconvolution needs f1 to have positive mass at its origin".into(),
        ));
    }
    let offset = f2.offset - f1.offset;
    let shift = offset.round();
    if offset < -tol || (offset - shift).abs() > 1e-9 * (1.0 + f2.offset.abs()) {
        return Err(Error::Precondition(format!(
            "offset difference {offset} is not a nonnegative integer"
        )));
    }
    let n = f2.len();
    let get1 = |j: usize| f1.probs.get(j).copied().unwrap_or(0.0);
    let mut z = vec![0.0; n];
    // reciprocal series and running sums for the error estimate
    let mut g = vec![0.0; n];
    let (mut g_abs, mut s_max) = (0.0_f64, 0.0_f64);
    let mut error_bounds = vec![0.0; n];
    for k in 0..n {
        let (mut acc, mut acc_abs) = (f2.probs[k], f2.probs[k].abs());
        let mut gacc = if k == 0 { 1.0 } else { 0.0 };
        for j in 1..=k.min(f1.len() - 1) {
            let f = get1(j);
            acc -= f * z[k - j];
            acc_abs += (f * z[k - j]).abs();
            gacc -= f * g[k - j];
        }
        z[k] = acc / f10;
        g[k] = gacc / f10;
        g_abs += g[k].abs() * f10;
        s_max = s_max.max(acc_abs / f10);
        error_bounds[k] = 64.0 * (k as f64 + 1.0) * f64::EPSILON * g_abs * s_max.max(f10);
    }
    let tails = f2.tail_bound + f1.tail_bound;
    let verdict = classify(&z, &error_bounds, tol, tails, false);
    Ok(Deconvolution {
        offset: shift.max(0.0),
        z,
        error_bounds,
        verdict,
    })
}

fn classify(z: &[f64], err: &[f64], tol: f64, tails: f64, compound_poisson: bool) -> OrderVerdict<ConvEvidence> {
    let mass: f64 = z.iter().sum();
    let (kmin, &min) = z
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    let evidence = ConvEvidence {
        min_coefficient: min,
        mass,
        compound_poisson,
    };
    if compound_poisson {
        return OrderVerdict::holds(evidence);
    }
    if let Some(k) = (0..z.len()).find(|&k| z[k] < -tol.max(err[k])) {
        return OrderVerdict::refuted(
            Violation::new("negative deconvolution coefficient")
                .at_index(k)
                .with_magnitude(-z[k]),
        );
    }
    if mass > 1.0 + tol + err.iter().fold(0.0, |a: f64, b| a.max(*b)) * z.len() as f64 {
        return OrderVerdict::refuted(Violation::new("deconvolution mass exceeds one").with_magnitude(mass - 1.0));
    }
    if min >= -tol && mass >= 1.0 - tails - tol && mass <= 1.0 + tol {
        return OrderVerdict::holds(evidence);
    }
    if min < -tol {
        OrderVerdict::unknown(format!(
            "coefficient {min:e} at k = {kmin} is negative but within its error bound {:e}",
            err[kmin]
        ))
    } else {
        OrderVerdict::unknown(format!(
            "deconvolution mass {mass} outside [1 − {tails:e} − tol, 1 + tol]"
        ))
    }
}

/// Coefficients `e_j = Σ α_2 q_2^{j+1} − Σ α_1 q_1^{j+1}` of the log-derivative
/// of `F2/F1`, grouped by distinct `q`: returns `(q, c_q)` with negligible
/// `c_q` dropped, sorted by decreasing `q`.
fn levy_rates(spec2: &ConvolutionSpec, spec1: &ConvolutionSpec) -> Vec<(f64, f64)> {
    let mut terms: Vec<(f64, f64)> = Vec::new();
    for (spec, sign) in [(spec2, 1.0), (spec1, -1.0)] {
        for (&a, &p) in spec.shapes().as_slice().iter().zip(spec.scales().as_slice()) {
            terms.push((1.0 - p, sign * a));
        }
    }
    terms.sort_by(|a, b| b.0.total_cmp(&a.0));
    let scale = spec1.total_shape().max(spec2.total_shape()).max(1.0);
    let mut grouped: Vec<(f64, f64)> = Vec::new();
    for (q, c) in terms {
        match grouped.last_mut() {
            Some(last) if (last.0 - q).abs() <= 1e-14 => last.1 += c,
            _ => grouped.push((q, c)),
        }
    }
    grouped.retain(|&(_, c)| c.abs() > 1e-12 * scale);
    grouped
}

/// `true` when every `e_j` (all `j ≥ 0`) is nonnegative up to parameter
/// tolerance. Beyond an explicit index the dominant rate outweighs all other
/// rates combined; below it the coefficients are checked one by one.
pub fn levy_coefficients_nonnegative(spec2: &ConvolutionSpec, spec1: &ConvolutionSpec) -> bool {
    let rates = levy_rates(spec2, spec1);
    let Some(&(q_top, c_top)) = rates.first() else {
        return true;
    };
    if c_top < 0.0 {
        return false;
    }
    let others = &rates[1..];
    const J_MAX: usize = 1_000_000;
    let mut j_star = None;
    for j in 0..J_MAX {
        let rest: f64 = others
            .iter()
            .map(|&(q, c)| c.abs() * (q / q_top).powi(j as i32 + 1))
            .sum();
        if rest * (1.0 + 1e-9) < c_top {
            j_star = Some(j);
            break;
        }
    }
    let Some(j_star) = j_star else {
        return false;
    };
    let mut pows: Vec<f64> = rates.iter().map(|r| r.0).collect();
    for _ in 0..j_star {
        let (mut e, mut e_abs) = (0.0, 0.0);
        for (pw, &(q, c)) in pows.iter_mut().zip(&rates) {
            e += c * *pw;
            e_abs += c.abs() * *pw;
            *pw *= q;
        }
        if e < -1e-12 * e_abs {
            return false;
        }
    }
    true
}

/// Certificate for `Σ N_{α_1i, p_1i} ≤_conv Σ N_{α_2i, p_2i}`.
///
/// Solves for the quotient `Z = F2/F1` through its log-derivative,
/// `(k+1) z_{k+1} = Σ_j e_j z_{k−j}`, `z_0 = Π p_2^{α_2} / Π p_1^{α_1}`,
/// which never divides by a small head probability. With `shifted` the laws
/// are those of `Σ Ñ` and the quotient lives on `R2 − R1 + ℤ≥0`.
///
/// `Holds` either when the coefficients `e_j` are all nonnegative (then `Z`
/// is compound Poisson) or when all computed `z_k ≥ −tol` with consistent
/// mass over the support of `F2`; `Refuted` when some `z_k` is negative
/// beyond its error bound, or when `R2 < R1` in the shifted case.
pub fn nb_deconvolution(
    spec2: &ConvolutionSpec,
    spec1: &ConvolutionSpec,
    tol: f64,
    tail_cap: f64,
    shifted: bool,
) -> Result<Deconvolution> {
    spec1.negbin_components()?;
    spec2.negbin_components()?;
    let offset = if shifted {
        spec2.total_shape() - spec1.total_shape()
    } else {
        0.0
    };
    let len = nb_convolution(spec2, tail_cap)?.len();
    if offset < -1e-12 * spec1.total_shape().max(1.0) {
        return Ok(Deconvolution {
            offset,
            z: Vec::new(),
            error_bounds: Vec::new(),
            verdict: OrderVerdict::refuted(
                Violation::new("total shape of the first sum exceeds that of the second").with_magnitude(-offset),
            ),
        });
    }
    let comps: Vec<(f64, f64, f64)> = [(spec2, 1.0), (spec1, -1.0)]
        .iter()
        .flat_map(|&(s, sign)| {
            s.shapes()
                .as_slice()
                .iter()
                .zip(s.scales().as_slice())
                .map(move |(&a, &p)| (sign * a, 1.0 - p, p))
        })
        .collect();
    let n_terms = comps.len() as f64;
    let log_z0: f64 = comps.iter().map(|&(a, _, p)| a * p.ln()).sum();
    let z0 = log_z0.exp();
    let (mut e, mut e_abs) = (vec![0.0; len], vec![0.0; len]);
    let mut pows: Vec<f64> = comps.iter().map(|c| c.1).collect();
    for j in 0..len {
        for (pw, &(a, q, _)) in pows.iter_mut().zip(&comps) {
            e[j] += a * *pw;
            e_abs[j] += a.abs() * *pw;
            *pw *= q;
        }
    }
    let mut z = vec![0.0; len];
    let mut err = vec![0.0; len];
    z[0] = z0;
    err[0] = (4.0 * n_terms + 4.0) * U * z0 * (1.0 + log_z0.abs());
    for k in 0..len - 1 {
        let (mut acc, mut prop, mut mag) = (0.0, 0.0, 0.0);
        for j in 0..=k {
            acc += e[j] * z[k - j];
            prop += e_abs[j] * err[k - j];
            mag += e_abs[j] * z[k - j].abs();
        }
        let kf = (k + 1) as f64;
        z[k + 1] = acc / kf;
        let gamma = (5.0 * k as f64 + 8.0 + 2.0 * n_terms) * U;
        err[k + 1] = (prop + gamma * mag) / kf;
    }
    let compound_poisson = levy_coefficients_nonnegative(spec2, spec1);
    let verdict = classify(&z, &err, tol, tail_cap, compound_poisson);
    Ok(Deconvolution {
        offset: offset.max(0.0),
        z,
        error_bounds: err,
        verdict,
    })
}
