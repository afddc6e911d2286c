//! Vector pairs modulo a common permutation, and the arrangement order.
//!
//! A [`PairClass`] `(x, y)` stands for every pair `(πx, πy)`. The arrangement
//! order is generated by interchanging two `y` components, with `x` held
//! sorted increasing, when the earlier of the two is the larger one.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::RealVector;
use crate::scaled_tolerance;
use crate::verdict::{OrderVerdict, Violation};

/// Default node budget for the breadth-first decision procedure (8! states).
pub const DEFAULT_BUDGET: usize = 40_320;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct PairClass {
    x: RealVector,
    y: RealVector,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    x: RealVector,
    y: RealVector,
}

impl TryFrom<PairRepr> for PairClass {
    type Error = Error;
    fn try_from(r: PairRepr) -> Result<Self> {
        PairClass::new(r.x, r.y)
    }
}

impl From<PairClass> for PairRepr {
    fn from(p: PairClass) -> Self {
        PairRepr { x: p.x, y: p.y }
    }
}

impl PairClass {
    pub fn new(x: RealVector, y: RealVector) -> Result<Self> {
        Error::check_len(x.len(), y.len())?;
        Ok(PairClass { x, y })
    }

    pub fn from_slices(x: &[f64], y: &[f64]) -> Result<Self> {
        PairClass::new(RealVector::new(x.to_vec())?, RealVector::new(y.to_vec())?)
    }

    pub fn x(&self) -> &RealVector {
        &self.x
    }

    pub fn y(&self) -> &RealVector {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub(crate) fn tolerance(&self, other: &PairClass) -> f64 {
        scaled_tolerance([
            self.x.as_slice(),
            self.y.as_slice(),
            other.x.as_slice(),
            other.y.as_slice(),
        ])
    }

    /// Applies the same permutation to both vectors: component `k` of the
    /// result is component `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> PairClass {
        let x = order.iter().map(|&k| self.x[k]).collect();
        let y = order.iter().map(|&k| self.y[k]).collect();
        PairClass {
            x: RealVector::new(x).expect("permutation of a valid vector"),
            y: RealVector::new(y).expect("permutation of a valid vector"),
        }
    }

    /// `(x↑, y↓)`: the least element of the class's arrangement orbit.
    pub fn opposite_arrangement(&self) -> PairClass {
        arranged(self, false)
    }

    /// `(x↑, y↑)`: the greatest element of the class's arrangement orbit.
    pub fn similar_arrangement(&self) -> PairClass {
        arranged(self, true)
    }

    /// True iff some representative has `x` increasing and `y` decreasing.
    pub fn is_opposite_ordered(&self) -> bool {
        let tol = self.tolerance(self);
        let (x, y) = (self.x.as_slice(), self.y.as_slice());
        (0..x.len()).all(|i| (0..x.len()).all(|j| !(x[i] < x[j] - tol && y[i] < y[j] - tol)))
    }
}

fn arranged(p: &PairClass, y_increasing: bool) -> PairClass {
    let mut xs = p.x.as_slice().to_vec();
    let mut ys = p.y.as_slice().to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    if !y_increasing {
        ys.reverse();
    }
    PairClass {
        x: RealVector::new(xs).unwrap(),
        y: RealVector::new(ys).unwrap(),
    }
}

/// Interchange of `y` positions `i < j` in the representative with `x`
/// increasing; legal only while `y[i] > y[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwapMove {
    pub i: usize,
    pub j: usize,
}

/// Representative with coordinate pairs sorted lexicographically ascending.
pub fn canonical_form(p: &PairClass) -> PairClass {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p.x[a].total_cmp(&p.x[b]).then(p.y[a].total_cmp(&p.y[b])));
    p.permuted(&order)
}

pub fn check_pair_equal_a(p1: &PairClass, p2: &PairClass) -> Result<bool> {
    Error::check_len(p1.len(), p2.len())?;
    let tol = p1.tolerance(p2);
    let (c1, c2) = (canonical_form(p1), canonical_form(p2));
    let close =
        |a: &RealVector, b: &RealVector| a.as_slice().iter().zip(b.as_slice()).all(|(u, v)| (u - v).abs() <= tol);
    Ok(close(&c1.x, &c2.x) && close(&c1.y, &c2.y))
}

/// Search problem shared by the decision procedure and its tests: `y` values
/// replaced by integer ranks of distinct values, `x` split into tie blocks.
struct Encoded {
    blocks: Vec<(usize, usize)>,
    start: Vec<u16>,
    goal: Vec<u16>,
}

fn encode(p1: &PairClass, p2: &PairClass) -> Result<Encoded> {
    Error::check_len(p1.len(), p2.len())?;
    let tol = p1.tolerance(p2);
    let (c1, c2) = (canonical_form(p1), canonical_form(p2));
    let (x1, x2) = (c1.x.as_slice(), c2.x.as_slice());
    if x1.iter().zip(x2).any(|(a, b)| (a - b).abs() > tol) {
        return Err(Error::MultisetMismatch("x components differ".into()));
    }
    let mut y1s = c1.y.as_slice().to_vec();
    let mut y2s = c2.y.as_slice().to_vec();
    y1s.sort_by(f64::total_cmp);
    y2s.sort_by(f64::total_cmp);
    if y1s.iter().zip(&y2s).any(|(a, b)| (a - b).abs() > tol) {
        return Err(Error::MultisetMismatch("y components differ".into()));
    }
    let mut distinct: Vec<f64> = Vec::new();
    for v in &y1s {
        if distinct.last().is_none_or(|last| v - last > tol) {
            distinct.push(*v);
        }
    }
    let rank = |v: f64| -> u16 {
        distinct
            .iter()
            .position(|d| (v - d).abs() <= tol)
            .or_else(|| distinct.iter().rposition(|d| *d <= v))
            .unwrap_or(0) as u16
    };
    let mut blocks = Vec::new();
    let mut start = 0;
    for k in 1..=x1.len() {
        if k == x1.len() || x1[k] - x1[start] > tol {
            blocks.push((start, k));
            start = k;
        }
    }
    let mut s: Vec<u16> = c1.y.as_slice().iter().map(|&v| rank(v)).collect();
    let mut g: Vec<u16> = c2.y.as_slice().iter().map(|&v| rank(v)).collect();
    normalize_blocks(&mut s, &blocks, &mut Vec::new());
    normalize_blocks(&mut g, &blocks, &mut Vec::new());
    Ok(Encoded {
        blocks,
        start: s,
        goal: g,
    })
}

/// Sorts `y` ascending inside every tie block of `x` by legal adjacent swaps,
/// recording them.
fn normalize_blocks(y: &mut [u16], blocks: &[(usize, usize)], moves: &mut Vec<SwapMove>) {
    for &(lo, hi) in blocks {
        for end in (lo + 1..hi).rev() {
            for k in lo..end {
                if y[k] > y[k + 1] {
                    y.swap(k, k + 1);
                    moves.push(SwapMove { i: k, j: k + 1 });
                }
            }
        }
    }
}

/// Decides `p1 ≤^a p2` by breadth-first search over `y` arrangements.
///
/// On success the witness is a list of legal moves starting from the
/// canonical representative of `p1` and ending at a representative `=^a p2`.
pub fn check_arrangement_leq(p1: &PairClass, p2: &PairClass, budget: usize) -> Result<OrderVerdict<Vec<SwapMove>>> {
    let enc = encode(p1, p2)?;
    let n = enc.start.len();
    if enc.start == enc.goal {
        return Ok(OrderVerdict::holds(Vec::new()));
    }
    let mut parent: HashMap<Vec<u16>, (Vec<u16>, Vec<SwapMove>)> = HashMap::new();
    let mut queue = VecDeque::from([enc.start.clone()]);
    parent.insert(enc.start.clone(), (Vec::new(), Vec::new()));
    while let Some(state) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                if state[i] <= state[j] {
                    continue;
                }
                let mut next = state.clone();
                next.swap(i, j);
                let mut moves = vec![SwapMove { i, j }];
                normalize_blocks(&mut next, &enc.blocks, &mut moves);
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), (state.clone(), moves));
                if next == enc.goal {
                    return Ok(OrderVerdict::holds(unwind(&parent, next)));
                }
                if parent.len() > budget {
                    return Ok(OrderVerdict::unknown(format!("node budget {budget} exhausted")));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(OrderVerdict::refuted(
        Violation::new("target arrangement unreachable by decreasing interchanges").with_magnitude(parent.len() as f64),
    ))
}

fn unwind(parent: &HashMap<Vec<u16>, (Vec<u16>, Vec<SwapMove>)>, mut state: Vec<u16>) -> Vec<SwapMove> {
    let mut segments = Vec::new();
    while let Some((prev, moves)) = parent.get(&state) {
        if moves.is_empty() {
            break;
        }
        segments.push(moves.clone());
        state = prev.clone();
    }
    segments.into_iter().rev().flatten().collect()
}

/// Replays `moves` from the canonical representative of `p1` and checks that
/// every move is legal and the result is `=^a p2`.
pub fn verify_arrangement_chain(p1: &PairClass, p2: &PairClass, moves: &[SwapMove]) -> bool {
    if p1.len() != p2.len() {
        return false;
    }
    let tol = p1.tolerance(p2);
    let c1 = canonical_form(p1);
    let mut y = c1.y.as_slice().to_vec();
    for m in moves {
        if m.i >= m.j || m.j >= y.len() || y[m.i] <= y[m.j] + tol {
            return false;
        }
        y.swap(m.i, m.j);
    }
    let Ok(end) = PairClass::from_slices(c1.x.as_slice(), &y) else {
        return false;
    };
    check_pair_equal_a(&end, p2).unwrap_or(false)
}

/// Number of pairs `i < j` with `y[i] > y[j]` (beyond tolerance).
pub fn inversions(y: &[f64]) -> usize {
    let tol = scaled_tolerance([y]);
    (0..y.len())
        .flat_map(|i| (i + 1..y.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| y[i] > y[j] + tol)
        .count()
}
