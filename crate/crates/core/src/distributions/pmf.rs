use serde::Serialize;

use super::params::{ConvolutionSpec, NegBinParams};
use crate::error::{Error, Result};

/// Default certified tail mass per distribution.
pub const DEFAULT_TAIL_CAP: f64 = 1e-12;

/// Longest lattice support any operation will build.
pub const MAX_SUPPORT: usize = 2_000_000;

/// Lattice law on `offset + {0, …, K}` with a bound on the mass beyond `K`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedPMF {
    pub offset: f64,
    pub probs: Vec<f64>,
    pub tail_bound: f64,
}

impl TruncatedPMF {
    pub fn point_mass(offset: f64) -> Self {
        TruncatedPMF {
            offset,
            probs: vec![1.0],
            tail_bound: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn point(&self, k: usize) -> f64 {
        self.offset + k as f64
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(k, p)| p * self.point(k)).sum()
    }

    /// `P(X ≥ offset + k)` over the retained support (tail excluded), one
    /// entry per lattice point.
    pub fn survival(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.probs.len()];
        let mut acc = 0.0;
        for k in (0..self.probs.len()).rev() {
            acc += self.probs[k];
            s[k] = acc;
        }
        s
    }

    /// Moves the lattice origin by `delta`.
    pub fn shifted(mut self, delta: f64) -> Self {
        self.offset += delta;
        self
    }

    /// Series `Σ t^{offset+k} probs[k]`.
    pub fn pgf(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let mut pow = 1.0;
        for &p in &self.probs {
            acc += p * pow;
            pow *= t;
        }
        acc * t.powf(self.offset)
    }

    /// Largest absolute difference after aligning both lattices; fails when
    /// the offsets differ by a non-integer.
    pub fn linf_distance(&self, other: &TruncatedPMF) -> Result<f64> {
        let d = other.offset - self.offset;
        let shift = d.round();
        if (d - shift).abs() > 1e-9 * (1.0 + self.offset.abs()) {
            return Err(Error::Precondition("lattices are not aligned".into()));
        }
        let shift = shift as i64;
        let lo = 0.min(shift);
        let hi = (self.len() as i64).max(shift + other.len() as i64);
        let get = |v: &[f64], i: i64| {
            if i >= 0 && (i as usize) < v.len() {
                v[i as usize]
            } else {
                0.0
            }
        };
        Ok((lo..hi)
            .map(|k| (get(&self.probs, k) - get(&other.probs, k - shift)).abs())
            .fold(0.0, f64::max))
    }
}

/// Negative binomial law `C(k+α−1, k) p^α q^k`, truncated once the geometric
/// bound on the remaining mass drops below `tail_cap`.
pub fn nb_pmf(params: NegBinParams, tail_cap: f64) -> Result<TruncatedPMF> {
    if !(tail_cap > 0.0 && tail_cap < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail cap {tail_cap} must lie in (0, 1)"
        )));
    }
    let (alpha, p, q) = (params.alpha(), params.p(), params.q());
    let log_start = alpha * p.ln();
    // below this the head underflows; run the recurrence in logs instead
    let in_logs = log_start < -700.0;
    let mut probs = Vec::new();
    let (mut cur, mut log_cur) = (log_start.exp(), log_start);
    let mut k = 0usize;
    loop {
        probs.push(if in_logs { log_cur.exp() } else { cur });
        let kf = k as f64;
        let ratio = q * (kf + alpha) / (kf + 1.0);
        // the term ratio is monotone in k, so it bounds every later ratio
        let rho = q * ((kf + alpha) / (kf + 1.0)).max(1.0);
        if rho < 1.0 {
            let last = *probs.last().unwrap();
            let tail = last * rho / (1.0 - rho);
            if tail <= tail_cap && (last > 0.0 || kf > alpha * q / p) {
                return Ok(TruncatedPMF {
                    offset: 0.0,
                    probs,
                    tail_bound: tail,
                });
            }
        }
        if probs.len() >= MAX_SUPPORT {
            return Err(Error::SupportTooLarge {
                len: probs.len(),
                max: MAX_SUPPORT,
            });
        }
        cur *= ratio;
        log_cur += ratio.ln();
        k += 1;
    }
}

/// Law of the independent sum. Operands are put in a canonical order first,
/// so `convolve(a, b)` and `convolve(b, a)` agree bit for bit.
pub fn convolve(a: &TruncatedPMF, b: &TruncatedPMF) -> Result<TruncatedPMF> {
    let key = |f: &TruncatedPMF| {
        (
            f.len(),
            f.offset.to_bits(),
            f.probs.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
        )
    };
    let (a, b) = if key(a) <= key(b) { (a, b) } else { (b, a) };
    let len = a.len() + b.len() - 1;
    if len > MAX_SUPPORT {
        return Err(Error::SupportTooLarge { len, max: MAX_SUPPORT });
    }
    let mut probs = vec![0.0; len];
    for (i, &x) in a.probs.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in probs[i..].iter_mut().zip(&b.probs) {
            *o += x * y;
        }
    }
    Ok(TruncatedPMF {
        offset: a.offset + b.offset,
        probs,
        tail_bound: a.tail_bound + b.tail_bound,
    })
}

/// Law of `Σ N_{α_i, p_i}`; the tail budget is split evenly over components
/// so that the total stays within `tail_cap`.
pub fn nb_convolution(spec: &ConvolutionSpec, tail_cap: f64) -> Result<TruncatedPMF> {
    let comps = spec.negbin_components()?;
    let per = tail_cap / comps.len() as f64;
    let mut acc = TruncatedPMF::point_mass(0.0);
    for c in comps {
        acc = convolve(&acc, &nb_pmf(c, per)?)?;
    }
    Ok(acc)
}

/// Law of the shifted sum `Σ Ñ_{α_i, p_i}` (lattice origin `R = Σ α_i`).
pub fn shifted_nb_convolution(spec: &ConvolutionSpec, tail_cap: f64) -> Result<TruncatedPMF> {
    Ok(nb_convolution(spec, tail_cap)?.shifted(spec.total_shape()))
}

/// Generating function `E t^{Ñ}` of the shifted variable `Ñ = α + N`:
/// `(p / (1/t − q))^α`, valid for `0 < t < 1/q`.
pub fn pgf_eval(params: NegBinParams, t: f64) -> Result<f64> {
    if !(t > 0.0 && t * params.q() < 1.0) {
        return Err(Error::InvalidParameter(format!("t = {t} outside (0, 1/q)")));
    }
    Ok((params.p() / (1.0 / t - params.q())).powf(params.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nb(a: f64, p: f64) -> NegBinParams {
        NegBinParams::new(a, p).unwrap()
    }

    #[test]
    fn geometric_case() {
        let f = nb_pmf(nb(1.0, 0.5), 1e-12).unwrap();
        for (k, &v) in f.probs.iter().enumerate() {
            assert!((v - 0.5f64.powi(k as i32 + 1)).abs() < 1e-16);
        }
        assert!(f.tail_bound <= 1e-12);
    }

    #[test]
    fn head_term() {
        for (a, p) in [(0.3, 0.2), (2.5, 0.7), (7.0, 0.05)] {
            let f = nb_pmf(nb(a, p), 1e-12).unwrap();
            assert!((f.probs[0] - p.powf(a)).abs() <= 1e-15 * p.powf(a));
        }
    }

    #[test]
    fn normalization_against_long_direct_sum() {
        let f = nb_pmf(nb(2.5, 0.3), 1e-12).unwrap();
        // independent oracle: terms from the binomial coefficient, summed far out
        let mut direct = 0.0;
        for k in 0..4000 {
            let kf = k as f64;
            let lc = statrs::function::gamma::ln_gamma(kf + 2.5)
                - statrs::function::gamma::ln_gamma(2.5)
                - statrs::function::gamma::ln_gamma(kf + 1.0);
            direct += (lc + 2.5 * 0.3f64.ln() + kf * 0.7f64.ln()).exp();
        }
        assert!((direct - 1.0).abs() < 1e-12);
        assert!((f.mass() + f.tail_bound - 1.0).abs() <= 1e-12);
        let true_tail = 1.0 - f.mass();
        assert!(true_tail <= f.tail_bound + 1e-15);
    }

    #[test]
    fn large_shape_uses_logs() {
        let f = nb_pmf(nb(400.0, 0.05), 1e-12).unwrap();
        assert!((f.mass() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn convolution_identity_and_symmetry() {
        let b = nb_pmf(nb(1.7, 0.4), 1e-12).unwrap();
        assert_eq!(convolve(&TruncatedPMF::point_mass(0.0), &b).unwrap(), b);
        let a = nb_pmf(nb(0.6, 0.25), 1e-12).unwrap();
        let ab = convolve(&a, &b).unwrap();
        let ba = convolve(&b, &a).unwrap();
        assert_eq!(ab.probs.len(), ba.probs.len());
        assert_eq!(ab, ba);
        assert_eq!(ab.tail_bound, a.tail_bound + b.tail_bound);
    }

    #[test]
    fn pgf_values() {
        assert!((pgf_eval(nb(1.0, 0.5), 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((pgf_eval(nb(3.2, 0.4), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(pgf_eval(nb(1.0, 0.5), 2.5).is_err());
        let f = nb_pmf(nb(2.0, 0.6), 1e-14).unwrap().shifted(2.0);
        assert!((f.pgf(0.9) - pgf_eval(nb(2.0, 0.6), 0.9).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn tail_is_split_over_components() {
        let s = ConvolutionSpec::negbin(&[1.0, 2.0, 0.5], &[0.3, 0.5, 0.2]).unwrap();
        let f = nb_convolution(&s, 1e-12).unwrap();
        assert!(f.tail_bound <= 1e-12);
        assert!((f.mass() + f.tail_bound - 1.0).abs() <= 1e-12);
    }
}
