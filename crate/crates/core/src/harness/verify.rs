use std::io::Write;
use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::identities::gamma_pair_residual;
use super::scenario::{generate_instance, Instance, Order, Scenario, ScenarioKind};
use crate::arrangement::{check_pair_equal_a, PairClass};
use crate::distributions::{
    default_gamma_grid, default_mixture_rate, gamma_convolution_cdf, nb_convolution, nb_deconvolution, nb_reduction,
    shape_mixture_pmf, shifted_nb_convolution, survival_dominance_check, ConvEvidence, ConvolutionSpec, Deconvolution,
    Family, LawRef, SurvivalMargin, TruncatedPMF, DEFAULT_TAIL_CAP,
};
use crate::error::{Error, Result};
use crate::rc_order::{decide_wrc, verify_rc_chain, ChainMode, DecideOptions, RcChain};
use crate::verdict::OrderVerdict;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    /// Slack for the numeric orders (coefficients and survival differences).
    pub tol: f64,
    pub tail_cap: f64,
    /// Search budget for the parameter-order decision.
    pub budget: usize,
    /// Points on the CDF grid for gamma survival comparisons.
    pub grid_points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: 1e-12,
            tail_cap: DEFAULT_TAIL_CAP,
            budget: DecideOptions::default().budget,
            grid_points: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum NumericEvidence {
    /// Quotient of the negative binomial generating functions.
    Deconvolution {
        #[serde(flatten)]
        conv: ConvEvidence,
        terms: usize,
        max_error_bound: f64,
    },
    /// Same quotient for the latent shapes of the gamma shape mixtures.
    NbReduction {
        rate: f64,
        #[serde(flatten)]
        conv: ConvEvidence,
        terms: usize,
        max_error_bound: f64,
    },
    Survival(SurvivalMargin),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    /// Parameter order holds and the numeric certificate confirms it.
    Agree,
    /// Parameter order holds but the numeric check refutes it.
    Discrepancy,
    /// Parameter order holds, numeric check undecided.
    NumericInconclusive,
    /// The parameter layer does not claim the order.
    NoClaim,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub v: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub order: Order,
    pub spec1: ConvolutionSpec,
    pub spec2: ConvolutionSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixing: Option<f64>,
    pub parameter: OrderVerdict<RcChain>,
    pub numeric: OrderVerdict<NumericEvidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_residual: Option<f64>,
    pub agreement: Agreement,
    pub options: VerifyOptions,
    pub runtime_ms: f64,
}

impl Report {
    /// Both layers hold: an accepted witness and a numeric certificate.
    pub fn holds(&self) -> bool {
        self.parameter.is_holds() && self.numeric.is_holds()
    }

    /// 0 when both layers hold, 1 when the numeric layer refutes, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.holds() {
            0
        } else if self.numeric.is_refuted() {
            1
        } else {
            2
        }
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

fn check_comparable(spec1: &ConvolutionSpec, spec2: &ConvolutionSpec) -> Result<()> {
    if spec1.family() != spec2.family() {
        return Err(Error::Precondition("the two specs belong to different families".into()));
    }
    Error::check_len(spec1.len(), spec2.len())
}

/// `(shapes, scales)` for `Conv`, `(shapes, ln scales)` for `St`.
pub fn parameter_pairs(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    order: Order,
) -> Result<(PairClass, PairClass)> {
    check_comparable(spec1, spec2)?;
    let pair = |s: &ConvolutionSpec| {
        let y = if order.uses_log_scale() {
            s.scales().ln()?
        } else {
            s.scales().clone()
        };
        PairClass::new(s.shapes().clone(), y)
    };
    Ok((pair(spec1)?, pair(spec2)?))
}

fn witness_accepted(chain: &RcChain, p1: &PairClass, p2: &PairClass) -> Result<bool> {
    Ok(verify_rc_chain(chain) && check_pair_equal_a(chain.first(), p1)? && check_pair_equal_a(chain.last(), p2)?)
}

/// Weak reverse-coupled order on the parameter pairs. A supplied witness is
/// used when it verifies and connects the two pairs; otherwise the order is
/// decided from scratch.
pub fn parameter_check(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    order: Order,
    witness: Option<&RcChain>,
    opts: &VerifyOptions,
) -> Result<OrderVerdict<RcChain>> {
    let (p1, p2) = parameter_pairs(spec1, spec2, order)?;
    if let Some(w) = witness {
        if witness_accepted(w, &p1, &p2)? {
            return Ok(OrderVerdict::holds(w.clone()));
        }
    }
    decide_wrc(&p1, &p2, ChainMode::Weak, DecideOptions { budget: opts.budget })
}

fn conv_evidence(d: Deconvolution, rate: Option<f64>) -> OrderVerdict<NumericEvidence> {
    let terms = d.z.len();
    let max_error_bound = d.error_bounds.iter().copied().fold(0.0, f64::max);
    d.verdict.map(|conv| match rate {
        None => NumericEvidence::Deconvolution {
            conv,
            terms,
            max_error_bound,
        },
        Some(rate) => NumericEvidence::NbReduction {
            rate,
            conv,
            terms,
            max_error_bound,
        },
    })
}

fn survival(d1: LawRef, d2: LawRef, tol: f64) -> Result<OrderVerdict<NumericEvidence>> {
    Ok(survival_dominance_check(d1, d2, tol)?.map(NumericEvidence::Survival))
}

fn gamma_survival(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    opts: &VerifyOptions,
) -> Result<OrderVerdict<NumericEvidence>> {
    let grid = default_gamma_grid(spec1, spec2, opts.grid_points, opts.tail_cap)?;
    let c1 = gamma_convolution_cdf(spec1, &grid, opts.tail_cap)?;
    let c2 = gamma_convolution_cdf(spec2, &grid, opts.tail_cap)?;
    survival(LawRef::from(&c1), LawRef::from(&c2), opts.tol)
}

fn mixed_law(spec: &ConvolutionSpec, p: f64, tail_cap: f64) -> Result<TruncatedPMF> {
    shape_mixture_pmf(&shifted_nb_convolution(spec, tail_cap)?, p, tail_cap)
}

/// Numeric certificate for `spec1 ≤ spec2`.
///
/// * negative binomial, `Conv`: quotient of generating functions;
/// * gamma, `Conv`: the same quotient for the latent shapes at the common
///   rate `2·max β`, which is sufficient only. Without it, a failed survival
///   comparison still refutes (`≤_conv` implies `≤_st`); otherwise `Unknown`;
/// * `St`: survival dominance on lattice atoms or on a CDF grid;
/// * with `mixing`, the laws compared are `Ñ_{L̃_k, mixing}` with latent
///   shapes `L̃_k` the shifted sums of the specs.
pub fn numeric_check(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    order: Order,
    mixing: Option<f64>,
    opts: &VerifyOptions,
) -> Result<OrderVerdict<NumericEvidence>> {
    check_comparable(spec1, spec2)?;
    let family = spec1.family();
    if let Some(p) = mixing {
        if family != Family::NegBin || order != Order::St {
            return Err(Error::Precondition(
                "shape mixtures are compared for negative binomial latents under st".into(),
            ));
        }
        let m1 = mixed_law(spec1, p, opts.tail_cap)?;
        let m2 = mixed_law(spec2, p, opts.tail_cap)?;
        return survival(LawRef::from(&m1), LawRef::from(&m2), opts.tol);
    }
    match (family, order) {
        (Family::NegBin, Order::Conv) => Ok(conv_evidence(
            nb_deconvolution(spec2, spec1, opts.tol, opts.tail_cap, false)?,
            None,
        )),
        (Family::Gamma, Order::Conv) => {
            let rate = default_mixture_rate(spec1).max(default_mixture_rate(spec2));
            let d = nb_deconvolution(
                &nb_reduction(spec2, rate)?,
                &nb_reduction(spec1, rate)?,
                opts.tol,
                opts.tail_cap,
                true,
            )?;
            if d.verdict.is_holds() {
                return Ok(conv_evidence(d, Some(rate)));
            }
            let st = gamma_survival(spec1, spec2, opts)?;
            Ok(match st {
                OrderVerdict::Refuted { .. } => st,
                _ => OrderVerdict::unknown(format!(
                    "latent quotient at rate {rate} is {} and the survival comparison does not refute",
                    d.verdict.status_str()
                )),
            })
        }
        (Family::NegBin, Order::St) => {
            let f1 = nb_convolution(spec1, opts.tail_cap)?;
            let f2 = nb_convolution(spec2, opts.tail_cap)?;
            survival(LawRef::from(&f1), LawRef::from(&f2), opts.tol)
        }
        (Family::Gamma, Order::St) => gamma_survival(spec1, spec2, opts),
    }
}

fn agreement(parameter: &OrderVerdict<RcChain>, numeric: &OrderVerdict<NumericEvidence>) -> Agreement {
    match (parameter.is_holds(), numeric) {
        (false, _) => Agreement::NoClaim,
        (true, OrderVerdict::Holds { .. }) => Agreement::Agree,
        (true, OrderVerdict::Refuted { .. }) => Agreement::Discrepancy,
        (true, OrderVerdict::Unknown { .. }) => Agreement::NumericInconclusive,
    }
}

fn build_report(
    scenario: Option<Scenario>,
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    order: Order,
    mixing: Option<f64>,
    witness: Option<&RcChain>,
    opts: &VerifyOptions,
) -> Result<Report> {
    let start = Instant::now();
    let parameter = parameter_check(spec1, spec2, order, witness, opts)?;
    let numeric = numeric_check(spec1, spec2, order, mixing, opts)?;
    Ok(Report {
        v: REPORT_VERSION,
        scenario,
        order,
        spec1: spec1.clone(),
        spec2: spec2.clone(),
        mixing,
        agreement: agreement(&parameter, &numeric),
        parameter,
        numeric,
        identity_residual: None,
        options: *opts,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Decides the parameter order for `spec1`, `spec2` and certifies the
/// implied stochastic order numerically.
pub fn verify_theorem_instance(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    order: Order,
    opts: &VerifyOptions,
) -> Result<Report> {
    build_report(None, spec1, spec2, order, None, None, opts)
}

/// As [`verify_theorem_instance`], using the instance's own witness and, for
/// the coupled gamma pair, the residual of the underlying identity.
pub fn verify_instance(inst: &Instance, opts: &VerifyOptions) -> Result<Report> {
    let start = Instant::now();
    let mut r = build_report(
        Some(inst.scenario),
        &inst.spec1,
        &inst.spec2,
        inst.order,
        inst.mixing,
        inst.witness.as_ref(),
        opts,
    )?;
    if let Some(c) = inst.coupled {
        r.identity_residual = Some(gamma_pair_residual(c.alpha, c.c0, c.small, c.big, opts.tail_cap)?.residual);
    }
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

/// Generates and verifies every seed in `seeds` in parallel; results come
/// back in seed order.
pub fn run_scenario(kind: ScenarioKind, n: usize, seeds: Range<u64>, opts: &VerifyOptions) -> Vec<Result<Report>> {
    seeds
        .into_par_iter()
        .map(|seed| verify_instance(&generate_instance(Scenario::new(kind, n, seed))?, opts))
        .collect()
}

/// One JSON object per line.
pub fn write_reports<'a>(mut w: impl Write, reports: impl IntoIterator<Item = &'a Report>) -> Result<()> {
    for r in reports {
        writeln!(w, "{}", r.to_json_line()?)?;
    }
    Ok(())
}
