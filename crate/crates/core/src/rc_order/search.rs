use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::arrangement::{canonical_form, check_arrangement_leq, check_pair_equal_a, PairClass};
use crate::error::{Error, Result};
use crate::rc_order::{check_necessary, construct_chain_opposite, ChainMode, ElementaryMove, RcChain};
use crate::verdict::{OrderVerdict, Violation};

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Maximum number of states expanded by the best-first search (and the
    /// node limit passed to the arrangement search).
    pub budget: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: 20_000 }
    }
}

/// Decides `p1 ≺rc p2` (strict) or its weak variant.
///
/// 1. Necessary conditions fail: `Refuted`.
/// 2. `p2` oppositely ordered: constructive chain, `Holds`.
/// 3. Same component multisets: the order reduces to the reversed
///    arrangement order, decided exactly by breadth-first search.
/// 4. Otherwise best-first search over moves whose new coordinate values are
///    drawn from the endpoint components; `Unknown` when the budget runs out.
///
/// A `Holds` chain starts at a representative of `p1`, ends at a
/// representative of `p2`, and passes [`crate::rc_order::verify_rc_chain`].
pub fn decide_wrc(
    p1: &PairClass,
    p2: &PairClass,
    mode: ChainMode,
    opts: DecideOptions,
) -> Result<OrderVerdict<RcChain>> {
    Error::check_len(p1.len(), p2.len())?;
    let nec = check_necessary(p1, p2, mode)?;
    if let Some(v) = nec.violation {
        return Ok(OrderVerdict::refuted(v));
    }
    if p2.is_opposite_ordered() {
        if let Ok(chain) = construct_chain_opposite(p1, p2, mode) {
            return Ok(OrderVerdict::holds(chain));
        }
    }
    if same_multisets(p1, p2) {
        return Ok(match check_arrangement_leq(p2, p1, opts.budget)? {
            OrderVerdict::Holds { evidence } => OrderVerdict::holds(reverse_arrangement_chain(p2, &evidence, mode)),
            OrderVerdict::Refuted { .. } => OrderVerdict::refuted(Violation::new(
                "equal component multisets but p1 is not above p2 in the arrangement order",
            )),
            OrderVerdict::Unknown { reason } => OrderVerdict::unknown(reason),
        });
    }
    let found = best_first(p1, p2, mode, opts.budget);
    if mode == ChainMode::Weak && matches!(found, OrderVerdict::Unknown { .. }) {
        // every strict chain is a weak chain; the strict search prunes harder
        if let OrderVerdict::Holds { evidence } = decide_wrc(p1, p2, ChainMode::Strict, opts)? {
            return Ok(OrderVerdict::holds(evidence.relabel(ChainMode::Weak)));
        }
    }
    Ok(found)
}

fn same_multisets(p1: &PairClass, p2: &PairClass) -> bool {
    let tol = p1.tolerance(p2);
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s
    };
    let close = |a: Vec<f64>, b: Vec<f64>| a.iter().zip(&b).all(|(u, v)| (u - v).abs() <= tol);
    close(sorted(p1.x().as_slice()), sorted(p2.x().as_slice()))
        && close(sorted(p1.y().as_slice()), sorted(p2.y().as_slice()))
}

/// The arrangement witness runs from canonical `p2` up to `p1`; replaying it
/// backwards gives coupled `y` interchanges from `p1` down to `p2`.
fn reverse_arrangement_chain(p2: &PairClass, moves: &[crate::arrangement::SwapMove], mode: ChainMode) -> RcChain {
    let c2 = canonical_form(p2);
    let x = c2.x().as_slice().to_vec();
    let mut states = vec![c2.y().as_slice().to_vec()];
    for m in moves {
        let mut y = states.last().unwrap().clone();
        y.swap(m.i, m.j);
        states.push(y);
    }
    let pair = |y: &[f64]| PairClass::from_slices(&x, y).expect("same lengths");
    let mut chain = RcChain::start(pair(states.last().unwrap()), mode);
    for (k, m) in moves.iter().enumerate().rev() {
        chain.push(ElementaryMove::MajorizeY { i: m.i, j: m.j }, pair(&states[k]));
    }
    chain
}

struct Node {
    score: f64,
    depth: usize,
    id: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // min-heap on (score, depth, id)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .score
            .total_cmp(&self.score)
            .then(other.depth.cmp(&self.depth))
            .then(other.id.cmp(&self.id))
    }
}

fn distance(a: &PairClass, b: &PairClass) -> f64 {
    let (ca, cb) = (canonical_form(a), canonical_form(b));
    let l1 = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(p, q)| (p - q).abs()).sum::<f64>();
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s
    };
    l1(ca.x().as_slice(), cb.x().as_slice())
        + l1(ca.y().as_slice(), cb.y().as_slice())
        + l1(&sorted(a.y().as_slice()), &sorted(b.y().as_slice()))
}

fn key(p: &PairClass) -> Vec<i64> {
    let c = canonical_form(p);
    c.x()
        .as_slice()
        .iter()
        .chain(c.y().as_slice())
        .map(|v| (v * 1e9).round() as i64)
        .collect()
}

fn candidates(values: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().chain(extra).copied().collect();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    v
}

/// All single moves out of `s` whose new values come from `vx` / `vy`.
fn successors(s: &PairClass, vx: &[f64], vy: &[f64], mode: ChainMode) -> Vec<(ElementaryMove, PairClass)> {
    let n = s.len();
    let (x, y) = (s.x().as_slice(), s.y().as_slice());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (on_x, vals) in [(true, vx), (false, vy)] {
                let cur = if on_x { x } else { y };
                let other = if on_x { y } else { x };
                let (a, b) = (cur[i], cur[j]);
                let total = a + b;
                let old_max = a.max(b);
                for &v in vals {
                    for (ni, nj) in [(v, total - v), (total - v, v)] {
                        if ni.max(nj) < old_max - 1e-12 || ((ni - a).abs() < 1e-12 && (nj - b).abs() < 1e-12) {
                            continue;
                        }
                        // coupling on the target pair
                        if (other[j] - other[i]) * (nj - ni) > 1e-12 {
                            continue;
                        }
                        let mut next = cur.to_vec();
                        next[i] = ni;
                        next[j] = nj;
                        let Ok(p) = (if on_x {
                            PairClass::from_slices(&next, y)
                        } else {
                            PairClass::from_slices(x, &next)
                        }) else {
                            continue;
                        };
                        let m = if on_x {
                            ElementaryMove::MajorizeX { i, j }
                        } else {
                            ElementaryMove::MajorizeY { i, j }
                        };
                        out.push((m, p));
                    }
                }
            }
        }
    }
    if mode == ChainMode::Weak {
        for i in 0..n {
            for &v in vx.iter().filter(|&&v| v > x[i] + 1e-12) {
                let mut next = x.to_vec();
                next[i] = v;
                out.push((ElementaryMove::RaiseX, PairClass::from_slices(&next, y).unwrap()));
            }
            for &v in vy.iter().filter(|&&v| v < y[i] - 1e-12) {
                let mut next = y.to_vec();
                next[i] = v;
                out.push((ElementaryMove::LowerY, PairClass::from_slices(x, &next).unwrap()));
            }
        }
    }
    out
}

fn best_first(p1: &PairClass, p2: &PairClass, mode: ChainMode, budget: usize) -> OrderVerdict<RcChain> {
    let vx = candidates(p2.x().as_slice(), p1.x().as_slice());
    let vy = candidates(p2.y().as_slice(), p1.y().as_slice());
    let mut states: Vec<(PairClass, Option<(usize, ElementaryMove)>)> = vec![(p1.clone(), None)];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(key(p1), 0)]);
    let mut heap = BinaryHeap::from([Node {
        score: distance(p1, p2),
        depth: 0,
        id: 0,
    }]);
    let mut expanded = 0;
    while let Some(node) = heap.pop() {
        expanded += 1;
        if expanded > budget {
            return OrderVerdict::unknown(format!("search budget {budget} exhausted"));
        }
        let current = states[node.id].0.clone();
        for (m, next) in successors(&current, &vx, &vy, mode) {
            let k = key(&next);
            if seen.contains_key(&k) {
                continue;
            }
            if !check_necessary(&next, p2, mode).map(|c| c.holds).unwrap_or(false) {
                continue;
            }
            let id = states.len();
            seen.insert(k, id);
            let done = check_pair_equal_a(&next, p2).unwrap_or(false);
            states.push((next.clone(), Some((node.id, m))));
            if done {
                return OrderVerdict::holds(rebuild(&states, id, mode));
            }
            heap.push(Node {
                score: distance(&next, p2),
                depth: node.depth + 1,
                id,
            });
        }
    }
    OrderVerdict::unknown("no chain over the discretized move set")
}

fn rebuild(states: &[(PairClass, Option<(usize, ElementaryMove)>)], mut id: usize, mode: ChainMode) -> RcChain {
    let mut rev = Vec::new();
    while let Some((parent, m)) = states[id].1 {
        rev.push((m, states[id].0.clone()));
        id = parent;
    }
    let mut chain = RcChain::start(states[id].0.clone(), mode);
    for (m, p) in rev.into_iter().rev() {
        chain.push(m, p);
    }
    chain
}
