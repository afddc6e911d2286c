use crate::arrangement::PairClass;
use crate::error::{Error, Result};
use crate::majorization::{check_slices, t_transform_chain, MajorizationMode, RealVector};
use crate::rc_order::{check_necessary, ChainMode, ElementaryMove, RcChain};

/// Builds a witness chain from `p1` to `p2` when `p2` is oppositely ordered
/// (`p2 =^a (x2↑, y2↓)`) and the componentwise majorization conditions hold.
///
/// Phases, each skipped when it would not change anything:
/// 1. (weak) raise `x1` to a vector majorized by `x2`;
/// 2. interchange `x` components until `x` is oppositely ordered to `y1`;
/// 3. T-transforms on `y` from `y1` to `y2'` (`y2` with its largest
///    component raised in weak mode);
/// 4. T-transforms on `x` up to `x2`;
/// 5. (weak) lower `y2'` back to `y2`.
///
/// Every intermediate pair keeps `x` and `y` oppositely ordered, so the
/// coupling condition holds at every coordinate pair.
pub fn construct_chain_opposite(p1: &PairClass, p2: &PairClass, mode: ChainMode) -> Result<RcChain> {
    Error::check_len(p1.len(), p2.len())?;
    if !p2.is_opposite_ordered() {
        return Err(Error::Precondition("target pair is not oppositely ordered".into()));
    }
    let nec = check_necessary(p1, p2, mode)?;
    if let Some(v) = nec.violation {
        return Err(Error::Precondition(format!("{} fails", v.condition)));
    }
    let n = p1.len();
    let tol = p1.tolerance(p2);

    let mut x2 = p2.x().as_slice().to_vec();
    x2.sort_by(f64::total_cmp);
    let mut y2 = p2.y().as_slice().to_vec();
    y2.sort_by(|a, b| b.total_cmp(a));

    let mut chain = RcChain::start(p1.clone(), mode);
    let mut x = p1.x().as_slice().to_vec();
    let y1 = p1.y().as_slice().to_vec();

    // largest y2 component absorbs the y surplus: y1 ≺ y2'
    let mut y2_raised = y2.clone();
    if mode == ChainMode::Weak {
        let raised = raise_to_majorized(&x, &x2, tol);
        if raised.iter().zip(&x).any(|(a, b)| a - b > tol) {
            x = raised;
            chain.push(ElementaryMove::RaiseX, pair(&x, &y1)?);
        }
        let surplus = y1.iter().sum::<f64>() - y2.iter().sum::<f64>();
        y2_raised[0] += surplus.max(0.0);
    }

    // positions by y1 decreasing; x is bubble-sorted increasing along this order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y1[b].total_cmp(&y1[a]));
    for pass in 0..n {
        let mut swapped = false;
        for t in 0..n.saturating_sub(1 + pass) {
            let (a, b) = (order[t], order[t + 1]);
            if x[a] > x[b] + tol {
                x.swap(a, b);
                chain.push(ElementaryMove::majorize_x(a, b), pair(&x, &y1)?);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    // y phase: along `order` reversed, y is increasing
    let rev: Vec<usize> = order.iter().rev().copied().collect();
    let mut y = y1.clone();
    let y_from: Vec<f64> = rev.iter().map(|&k| y[k]).collect();
    let y_to: Vec<f64> = y2_raised.iter().rev().copied().collect();
    let ychain = t_transform_chain(&RealVector::new(y_from)?, &RealVector::new(y_to)?)?;
    for (step, v) in ychain.steps.iter().zip(ychain.vectors.iter().skip(1)) {
        for (r, &k) in rev.iter().enumerate() {
            y[k] = v[r];
        }
        chain.push(ElementaryMove::majorize_y(rev[step.i], rev[step.j]), pair(&x, &y)?);
    }

    // x phase: along `order`, x is increasing
    let x_from: Vec<f64> = order.iter().map(|&k| x[k]).collect();
    let xchain = t_transform_chain(&RealVector::new(x_from)?, &RealVector::new(x2.clone())?)?;
    for (step, v) in xchain.steps.iter().zip(xchain.vectors.iter().skip(1)) {
        for (r, &k) in order.iter().enumerate() {
            x[k] = v[r];
        }
        chain.push(ElementaryMove::majorize_x(order[step.i], order[step.j]), pair(&x, &y)?);
    }

    if mode == ChainMode::Weak {
        let mut lowered = y.clone();
        for (r, &k) in order.iter().enumerate() {
            lowered[k] = y2[r];
        }
        if lowered.iter().zip(&y).any(|(a, b)| (a - b).abs() > tol) {
            y = lowered;
            chain.push(ElementaryMove::LowerY, pair(&x, &y)?);
        }
    }
    Ok(chain)
}

fn pair(x: &[f64], y: &[f64]) -> Result<PairClass> {
    PairClass::from_slices(x, y)
}

/// Componentwise raise of `x` to a vector majorized by `target`, given
/// `x ≺_w target`. First tries adding the whole deficit to the largest
/// component; when that overshoots, lifts the smallest components to a common
/// level instead (`u_k = max(x_k, c)` with the right total).
pub(crate) fn raise_to_majorized(x: &[f64], target: &[f64], tol: f64) -> Vec<f64> {
    let deficit = target.iter().sum::<f64>() - x.iter().sum::<f64>();
    if deficit <= tol {
        return x.to_vec();
    }
    let top = (0..x.len()).max_by(|&a, &b| x[a].total_cmp(&x[b])).unwrap_or(0);
    let mut simple = x.to_vec();
    simple[top] += deficit;
    if check_slices(&simple, target, MajorizationMode::Full).holds {
        return simple;
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let total: f64 = target.iter().sum();
    let n = sorted.len();
    let mut level = sorted[n - 1];
    for m in 1..=n {
        let rest: f64 = sorted[m..].iter().sum();
        let c = (total - rest) / m as f64;
        if c >= sorted[m - 1] - tol && (m == n || c <= sorted[m] + tol) {
            level = c;
            break;
        }
    }
    x.iter().map(|&v| v.max(level)).collect()
}
