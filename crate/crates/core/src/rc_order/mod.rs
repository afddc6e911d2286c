//! The reverse-coupled majorization order on vector pairs and its weak
//! (sub-sup) variant.
//!
//! The order is defined by generation: `(x1, y1) ≺rc (x2, y2)` when a finite
//! chain of elementary moves links them. Two moves act on a single pair of
//! coordinates `i < j` of one vector (majorizing it there) and are allowed
//! only where the *target* pair is oppositely ordered:
//! `(y2j - y2i)(x2j - x2i) <= 0`. The weak order additionally admits raising
//! `x` and lowering `y` componentwise, and the weak two-coordinate moves.
//!
//! Chains here are concrete: consecutive pairs are compared position by
//! position, so a chain may start and end at any representative of the
//! classes it links.

mod construct;
mod search;

pub use construct::construct_chain_opposite;
pub use search::{decide_wrc, DecideOptions};

use serde::{Deserialize, Serialize};

use crate::arrangement::PairClass;
use crate::error::{Error, Result};
use crate::majorization::{check_slices, MajorizationMode};
use crate::verdict::Violation;
use crate::BASE_TOLERANCE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMode {
    /// `≺rc`: only the two coupled majorization moves.
    Strict,
    /// Weak sub-sup variant: adds componentwise raise/lower and weak moves.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementaryMove {
    /// `(x1i, x1j) ≺ (x2i, x2j)`, rest of `x` and all of `y` unchanged.
    MajorizeX { i: usize, j: usize },
    /// `(y1i, y1j) ≺ (y2i, y2j)`, rest of `y` and all of `x` unchanged.
    MajorizeY { i: usize, j: usize },
    /// `x1 <= x2` componentwise, `y` unchanged (weak only).
    RaiseX,
    /// `y1 >= y2` componentwise, `x` unchanged (weak only).
    LowerY,
    /// `(x1i, x1j) ≺_w (x2i, x2j)` (weak only).
    WeakMajorizeX { i: usize, j: usize },
    /// `(y1i, y1j) ≺^w (y2i, y2j)` (weak only).
    WeakMajorizeY { i: usize, j: usize },
}

impl ElementaryMove {
    pub fn is_weak_only(&self) -> bool {
        !matches!(
            self,
            ElementaryMove::MajorizeX { .. } | ElementaryMove::MajorizeY { .. }
        )
    }

    pub(crate) fn majorize_x(a: usize, b: usize) -> Self {
        ElementaryMove::MajorizeX {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub(crate) fn majorize_y(a: usize, b: usize) -> Self {
        ElementaryMove::MajorizeY {
            i: a.min(b),
            j: a.max(b),
        }
    }
}

/// A witness chain: `pairs[k + 1]` arises from `pairs[k]` by `moves[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RcChain {
    pub pairs: Vec<PairClass>,
    pub moves: Vec<ElementaryMove>,
    pub mode: ChainMode,
}

impl RcChain {
    pub fn start(first: PairClass, mode: ChainMode) -> Self {
        RcChain {
            pairs: vec![first],
            moves: Vec::new(),
            mode,
        }
    }

    pub fn push(&mut self, m: ElementaryMove, next: PairClass) {
        self.moves.push(m);
        self.pairs.push(next);
    }

    pub fn first(&self) -> &PairClass {
        &self.pairs[0]
    }

    pub fn last(&self) -> &PairClass {
        self.pairs.last().expect("chain is non-empty")
    }

    pub fn num_moves(&self) -> usize {
        self.moves.len()
    }

    /// Concatenates `other`, whose first pair must equal this chain's last.
    pub fn extend(&mut self, other: RcChain) {
        debug_assert_eq!(self.last(), other.first());
        self.moves.extend(other.moves);
        self.pairs.extend(other.pairs.into_iter().skip(1));
    }

    /// Same moves under another mode; a strict chain is always a weak one.
    pub fn relabel(mut self, mode: ChainMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ChainRepr::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: ChainRepr = serde_json::from_str(s)?;
        RcChain::try_from(repr)
    }
}

impl Serialize for RcChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RcChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ChainRepr::deserialize(d)?;
        RcChain::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    v: u32,
    mode: ChainMode,
    steps: Vec<StepRepr>,
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    pair: PairClass,
    #[serde(rename = "move")]
    mv: Option<ElementaryMove>,
}

impl From<&RcChain> for ChainRepr {
    fn from(c: &RcChain) -> Self {
        let steps = c
            .pairs
            .iter()
            .enumerate()
            .map(|(k, p)| StepRepr {
                pair: p.clone(),
                mv: k.checked_sub(1).map(|m| c.moves[m]),
            })
            .collect();
        ChainRepr {
            v: 1,
            mode: c.mode,
            steps,
        }
    }
}

impl TryFrom<ChainRepr> for RcChain {
    type Error = Error;
    fn try_from(r: ChainRepr) -> Result<Self> {
        let mut steps = r.steps.into_iter();
        let first = steps
            .next()
            .ok_or_else(|| Error::Malformed("witness chain has no steps".into()))?;
        if first.mv.is_some() {
            return Err(Error::Malformed("first witness step must not carry a move".into()));
        }
        let mut chain = RcChain::start(first.pair, r.mode);
        for s in steps {
            let mv =
                s.mv.ok_or_else(|| Error::Malformed("witness step without a move".into()))?;
            chain.push(mv, s.pair);
        }
        Ok(chain)
    }
}

struct Tol {
    x: f64,
    y: f64,
    product: f64,
}

fn tolerances(a: &PairClass, b: &PairClass) -> Tol {
    let scale = |u: &[f64], v: &[f64]| u.iter().chain(v).fold(1.0_f64, |m, c| m.max(c.abs()));
    let sx = scale(a.x().as_slice(), b.x().as_slice());
    let sy = scale(a.y().as_slice(), b.y().as_slice());
    Tol {
        x: BASE_TOLERANCE * sx,
        y: BASE_TOLERANCE * sy,
        product: BASE_TOLERANCE * sx * sy,
    }
}

fn equal_except(u: &[f64], v: &[f64], i: usize, j: usize, tol: f64) -> bool {
    u.iter()
        .zip(v)
        .enumerate()
        .all(|(m, (a, b))| m == i || m == j || (a - b).abs() <= tol)
}

fn all_equal(u: &[f64], v: &[f64], tol: f64) -> bool {
    u.iter().zip(v).all(|(a, b)| (a - b).abs() <= tol)
}

/// The coupling condition on the target pair at coordinates `i`, `j`.
pub fn reverse_pair_holds(b: &PairClass, i: usize, j: usize) -> bool {
    let tol = tolerances(b, b);
    let (x, y) = (b.x().as_slice(), b.y().as_slice());
    (y[j] - y[i]) * (x[j] - x[i]) <= tol.product
}

/// True iff `b` arises from `a` by `m`, and `m` is admissible in `mode`.
pub fn verify_rc_move(a: &PairClass, b: &PairClass, m: &ElementaryMove, mode: ChainMode) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    if mode == ChainMode::Strict && m.is_weak_only() {
        return false;
    }
    let tol = tolerances(a, b);
    let (ax, ay, bx, by) = (a.x().as_slice(), a.y().as_slice(), b.x().as_slice(), b.y().as_slice());
    let two = |u: &[f64], v: &[f64], i: usize, j: usize, mm: MajorizationMode| {
        check_slices(&[u[i], u[j]], &[v[i], v[j]], mm).holds
    };
    let indices_ok = |i: usize, j: usize| i < j && j < n;
    match *m {
        ElementaryMove::MajorizeX { i, j } | ElementaryMove::WeakMajorizeX { i, j } => {
            let mm = if matches!(m, ElementaryMove::MajorizeX { .. }) {
                MajorizationMode::Full
            } else {
                MajorizationMode::Below
            };
            indices_ok(i, j)
                && reverse_pair_holds(b, i, j)
                && two(ax, bx, i, j, mm)
                && equal_except(ax, bx, i, j, tol.x)
                && all_equal(ay, by, tol.y)
        }
        ElementaryMove::MajorizeY { i, j } | ElementaryMove::WeakMajorizeY { i, j } => {
            let mm = if matches!(m, ElementaryMove::MajorizeY { .. }) {
                MajorizationMode::Full
            } else {
                MajorizationMode::Above
            };
            indices_ok(i, j)
                && reverse_pair_holds(b, i, j)
                && two(ay, by, i, j, mm)
                && equal_except(ay, by, i, j, tol.y)
                && all_equal(ax, bx, tol.x)
        }
        ElementaryMove::RaiseX => ax.iter().zip(bx).all(|(u, v)| *u <= v + tol.x) && all_equal(ay, by, tol.y),
        ElementaryMove::LowerY => ay.iter().zip(by).all(|(u, v)| *u >= v - tol.y) && all_equal(ax, bx, tol.x),
    }
}

/// True iff every consecutive pair of the chain passes [`verify_rc_move`].
pub fn verify_rc_chain(chain: &RcChain) -> bool {
    if chain.pairs.is_empty() || chain.pairs.len() != chain.moves.len() + 1 {
        return false;
    }
    chain
        .pairs
        .windows(2)
        .zip(&chain.moves)
        .all(|(w, m)| verify_rc_move(&w[0], &w[1], m, chain.mode))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NecessaryCheck {
    pub holds: bool,
    pub violation: Option<Violation>,
}

/// Necessary conditions implied by the order: strict needs `x1 ≺ x2` and
/// `y1 ≺ y2`; weak needs `x1 ≺_w x2` and `y1 ≺^w y2`.
pub fn check_necessary(p1: &PairClass, p2: &PairClass, mode: ChainMode) -> Result<NecessaryCheck> {
    Error::check_len(p1.len(), p2.len())?;
    let (mx, my, lx, ly) = match mode {
        ChainMode::Strict => (MajorizationMode::Full, MajorizationMode::Full, "x1 ≺ x2", "y1 ≺ y2"),
        ChainMode::Weak => (
            MajorizationMode::Below,
            MajorizationMode::Above,
            "x1 ≺_w x2",
            "y1 ≺^w y2",
        ),
    };
    for (u, v, mm, label) in [(p1.x(), p2.x(), mx, lx), (p1.y(), p2.y(), my, ly)] {
        let c = check_slices(u.as_slice(), v.as_slice(), mm);
        if !c.holds {
            let mut violation = Violation::new(label);
            violation.index = c.violated_prefix;
            return Ok(NecessaryCheck {
                holds: false,
                violation: Some(violation),
            });
        }
    }
    Ok(NecessaryCheck {
        holds: true,
        violation: None,
    })
}
