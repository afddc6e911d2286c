#![allow(dead_code)]
// Independent reference computations shared by the integration tests.

use statrs::function::gamma::{gamma_lr, ln_gamma};

/// Tanh-sinh quadrature on `[0, 1]`. The integrand receives `(v, 1 − v)`,
/// both computed without cancellation near the endpoints.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64) -> f64 {
    let eval = |t: f64| {
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let v = 1.0 / (1.0 + (-2.0 * s).exp());
        let w = 1.0 / (1.0 + (2.0 * s).exp());
        let weight = std::f64::consts::PI * t.cosh() * v * w;
        if weight == 0.0 || v == 0.0 || w == 0.0 {
            0.0
        } else {
            weight * f(v, w)
        }
    };
    let t_max = 4.5;
    let mut h = 0.5;
    let mut sum = eval(0.0)
        + (1..=(t_max / h) as usize)
            .map(|k| eval(k as f64 * h) + eval(-(k as f64) * h))
            .sum::<f64>();
    let mut prev = sum * h;
    for _ in 0..10 {
        h /= 2.0;
        // new nodes are the odd multiples of the halved step
        let n = (t_max / h) as usize;
        sum += (1..=n)
            .step_by(2)
            .map(|k| eval(k as f64 * h) + eval(-(k as f64) * h))
            .sum::<f64>();
        let cur = sum * h;
        if (cur - prev).abs() <= 1e-15 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `P(a, x)` from the reference implementation, which rejects `x = 0`.
pub fn p_lower(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(a, x)
    }
}

/// CDF of `G(a1, b1) + G(a2, b2)` at `t` by conditioning on the first
/// summand. With `s = t·v^{1/a1}` the first density becomes a bounded
/// integrand:
/// `F(t) = (b1 t)^{a1} / Γ(a1 + 1) · ∫₀¹ e^{−b1 t u} P(a2, b2 t (1 − u)) dv`,
/// `u = v^{1/a1}`.
pub fn gamma2_cdf(a1: f64, b1: f64, a2: f64, b2: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let front = (a1 * (b1 * t).ln() - ln_gamma(a1 + 1.0)).exp();
    let integral = tanh_sinh(|v, w| {
        let lv = if v < 0.5 { v.ln() } else { (-w).ln_1p() };
        let u = (lv / a1).exp();
        let one_minus_u = -(lv / a1).exp_m1();
        (-b1 * t * u).exp() * p_lower(a2, b2 * t * one_minus_u)
    });
    front * integral
}

/// `P(N = k)` for the negative binomial with shape `alpha`, success `p`.
pub fn nb_pmf_direct(alpha: f64, p: f64, k: usize) -> f64 {
    let kf = k as f64;
    (ln_gamma(kf + alpha) - ln_gamma(alpha) - ln_gamma(kf + 1.0) + alpha * p.ln() + kf * (1.0 - p).ln()).exp()
}

/// Sum over `Σ(x_i − c)^+` for the integer vector `x`.
fn upper_excess(x: &[i64], c: i64) -> i64 {
    x.iter().map(|&v| (v - c).max(0)).sum()
}

fn lower_excess(x: &[i64], c: i64) -> i64 {
    x.iter().map(|&v| (c - v).max(0)).sum()
}

fn breakpoints(x: &[i64], y: &[i64]) -> impl Iterator<Item = i64> {
    let lo = x.iter().chain(y).copied().min().unwrap_or(0);
    let hi = x.iter().chain(y).copied().max().unwrap_or(0);
    lo..=hi
}

/// `x ≺_w y` through the convex test functions `(v − c)^+`.
pub fn below_oracle(x: &[i64], y: &[i64]) -> bool {
    breakpoints(x, y).all(|c| upper_excess(x, c) <= upper_excess(y, c))
}

/// `x ≺^w y` through the test functions `(c − v)^+`.
pub fn above_oracle(x: &[i64], y: &[i64]) -> bool {
    breakpoints(x, y).all(|c| lower_excess(x, c) <= lower_excess(y, c))
}

pub fn full_oracle(x: &[i64], y: &[i64]) -> bool {
    x.iter().sum::<i64>() == y.iter().sum::<i64>() && below_oracle(x, y)
}

/// Every vector of length `n` over `values`.
pub fn vectors<T: Copy>(values: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nondecreasing vectors of length `n` over sorted `values`.
pub fn sorted_vectors<T: Copy + PartialOrd>(values: &[T], n: usize) -> Vec<Vec<T>> {
    vectors(values, n)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                q
            })
        })
        .collect()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}
