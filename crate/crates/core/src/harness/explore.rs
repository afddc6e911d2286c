use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::scenario::Order;
use super::verify::{parameter_pairs, VerifyOptions};
use crate::distributions::{default_mixture_rate, nb_deconvolution, nb_reduction, ConvolutionSpec};
use crate::error::Result;
use crate::rc_order::{construct_chain_opposite, verify_rc_chain, ChainMode, RcChain};

/// A gamma pair whose log-rate parameters are weakly reverse-coupled
/// ordered but whose latent quotient has a coefficient negative beyond its
/// error bound. The latent check is sufficient only, so this is evidence
/// against the convolution order, not a proof.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub label: &'static str,
    pub spec1: ConvolutionSpec,
    pub spec2: ConvolutionSpec,
    pub witness: RcChain,
    pub rate: f64,
    pub index: usize,
    pub coefficient: f64,
    pub error_bound: f64,
}

/// Re-runs both checks on a configuration; `Some` when the witness is
/// accepted for `(shapes, ln rates)` and the latent quotient is refuted at
/// some index beyond its error bound.
pub fn examine_candidate(
    spec1: &ConvolutionSpec,
    spec2: &ConvolutionSpec,
    witness: &RcChain,
    opts: &VerifyOptions,
) -> Result<Option<Candidate>> {
    let (p1, p2) = parameter_pairs(spec1, spec2, Order::St)?;
    let connects = verify_rc_chain(witness)
        && crate::arrangement::check_pair_equal_a(witness.first(), &p1)?
        && crate::arrangement::check_pair_equal_a(witness.last(), &p2)?;
    if !connects {
        return Ok(None);
    }
    let rate = default_mixture_rate(spec1).max(default_mixture_rate(spec2));
    let d = nb_deconvolution(
        &nb_reduction(spec2, rate)?,
        &nb_reduction(spec1, rate)?,
        opts.tol,
        opts.tail_cap,
        true,
    )?;
    let Some(k) = d.verdict.violation().and_then(|v| v.index) else {
        return Ok(None);
    };
    if !(d.z[k] < -d.error_bounds[k]) {
        return Ok(None);
    }
    Ok(Some(Candidate {
        label: "evidence",
        spec1: spec1.clone(),
        spec2: spec2.clone(),
        witness: witness.clone(),
        rate,
        index: k,
        coefficient: d.z[k],
        error_bound: d.error_bounds[k],
    }))
}

fn average_with_permutation(rng: &mut ChaCha8Rng, v: &[f64]) -> Vec<f64> {
    let mut perm: Vec<usize> = (0..v.len()).collect();
    perm.shuffle(rng);
    let t = rng.random::<f64>();
    v.iter().zip(&perm).map(|(&a, &k)| t * a + (1.0 - t) * v[k]).collect()
}

/// Random gamma configurations with `(α2, ln β2)` oppositely ordered and
/// `α1 ≺_w α2`, `ln β1 ≺^w ln β2`, so the weak order on log rates holds by
/// construction; keeps those whose latent quotient is refuted.
pub fn explore_counterexamples(budget: usize, seed: u64, opts: &VerifyOptions) -> Result<Vec<Candidate>> {
    let (lo, hi) = (0.2_f64.ln(), 5.0_f64.ln());
    let mut found = Vec::new();
    for it in 0..budget.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (it as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
        let rng = &mut rng;
        let n = rng.random_range(2..=3);
        let mut a2: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..3.0)).collect();
        a2.sort_by(f64::total_cmp);
        let mut y2: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        y2.sort_by(|a, b| b.total_cmp(a));
        let mut a1: Vec<f64> = average_with_permutation(rng, &a2)
            .into_iter()
            .map(|z| z - 0.2 * rng.random::<f64>() * (z - 0.2))
            .collect();
        let mut y1: Vec<f64> = average_with_permutation(rng, &y2)
            .into_iter()
            .map(|w| w + 0.2 * rng.random::<f64>() * (hi - w))
            .collect();
        a1.shuffle(rng);
        y1.shuffle(rng);
        let rates = |y: &[f64]| y.iter().map(|v| v.exp()).collect::<Vec<_>>();
        let spec1 = ConvolutionSpec::gamma(&a1, &rates(&y1))?;
        let spec2 = ConvolutionSpec::gamma(&a2, &rates(&y2))?;
        let (p1, p2) = parameter_pairs(&spec1, &spec2, Order::St)?;
        let Ok(witness) = construct_chain_opposite(&p1, &p2, ChainMode::Weak) else {
            continue;
        };
        if let Some(c) = examine_candidate(&spec1, &spec2, &witness, opts)? {
            found.push(c);
        }
    }
    Ok(found)
}
