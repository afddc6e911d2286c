use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::PairClass;
use crate::distributions::{ConvolutionSpec, Family};
use crate::error::{Error, Result};
use crate::rc_order::{construct_chain_opposite, verify_rc_chain, ChainMode, ElementaryMove, RcChain};

pub const MAX_COMPONENTS: usize = 6;

const SHAPES: (f64, f64) = (0.2, 3.0);
const SUCCESS: (f64, f64) = (0.05, 0.95);
const RATES: (f64, f64) = (0.2, 5.0);

/// Which stochastic order a comparison is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Conv,
    St,
}

impl Order {
    /// Second parameter coordinate is the scale itself for `Conv`, its log
    /// for `St`.
    pub fn uses_log_scale(self) -> bool {
        self == Order::St
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conv" => Ok(Order::Conv),
            "st" => Ok(Order::St),
            _ => Err(Error::InvalidParameter(format!(
                "unknown order {s:?} (expected conv or st)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    RaiseAlpha,
    LowerBeta,
    MajorizeBeta,
    DiffAlphaMajorizeBeta,
    MajorizeAlpha,
    ConvAi,
    RcGeneral,
    GammaConv,
    OppositeOrderedWeak,
    LogMajorizeBetaSt,
    StGeneralNegbin,
    StGeneralGamma,
    AiTail,
    CoupledGammaPair,
    MixtureLemmaSt,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 15] = [
        ScenarioKind::RaiseAlpha,
        ScenarioKind::LowerBeta,
        ScenarioKind::MajorizeBeta,
        ScenarioKind::DiffAlphaMajorizeBeta,
        ScenarioKind::MajorizeAlpha,
        ScenarioKind::ConvAi,
        ScenarioKind::RcGeneral,
        ScenarioKind::GammaConv,
        ScenarioKind::OppositeOrderedWeak,
        ScenarioKind::LogMajorizeBetaSt,
        ScenarioKind::StGeneralNegbin,
        ScenarioKind::StGeneralGamma,
        ScenarioKind::AiTail,
        ScenarioKind::CoupledGammaPair,
        ScenarioKind::MixtureLemmaSt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::RaiseAlpha => "raise-alpha",
            ScenarioKind::LowerBeta => "lower-beta",
            ScenarioKind::MajorizeBeta => "majorize-beta",
            ScenarioKind::DiffAlphaMajorizeBeta => "diff-alpha-majorize-beta",
            ScenarioKind::MajorizeAlpha => "majorize-alpha",
            ScenarioKind::ConvAi => "conv-ai",
            ScenarioKind::RcGeneral => "rc-general",
            ScenarioKind::GammaConv => "gamma-conv",
            ScenarioKind::OppositeOrderedWeak => "opposite-ordered-weak",
            ScenarioKind::LogMajorizeBetaSt => "log-majorize-beta-st",
            ScenarioKind::StGeneralNegbin => "st-general-negbin",
            ScenarioKind::StGeneralGamma => "st-general-gamma",
            ScenarioKind::AiTail => "ai-tail",
            ScenarioKind::CoupledGammaPair => "coupled-gamma-pair",
            ScenarioKind::MixtureLemmaSt => "mixture-lemma-st",
        }
    }

    pub fn family(self) -> Family {
        match self {
            ScenarioKind::GammaConv
            | ScenarioKind::StGeneralGamma
            | ScenarioKind::AiTail
            | ScenarioKind::CoupledGammaPair => Family::Gamma,
            _ => Family::NegBin,
        }
    }

    pub fn order(self) -> Order {
        match self {
            ScenarioKind::LogMajorizeBetaSt
            | ScenarioKind::StGeneralNegbin
            | ScenarioKind::StGeneralGamma
            | ScenarioKind::AiTail
            | ScenarioKind::MixtureLemmaSt => Order::St,
            _ => Order::Conv,
        }
    }

    fn min_components(self) -> usize {
        match self {
            ScenarioKind::RaiseAlpha
            | ScenarioKind::LowerBeta
            | ScenarioKind::RcGeneral
            | ScenarioKind::GammaConv
            | ScenarioKind::OppositeOrderedWeak
            | ScenarioKind::StGeneralNegbin
            | ScenarioKind::StGeneralGamma
            | ScenarioKind::MixtureLemmaSt => 1,
            _ => 2,
        }
    }

    fn tag(self) -> u64 {
        ScenarioKind::ALL.iter().position(|&k| k == self).unwrap() as u64
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scenario {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub n: usize,
    pub seed: u64,
}

impl Scenario {
    pub fn new(kind: ScenarioKind, n: usize, seed: u64) -> Self {
        Scenario { kind, n, seed }
    }

    pub fn family(&self) -> Family {
        self.kind.family()
    }
}

/// Parameters of the coupled gamma pair: mixing over rates `c0 ± small` at
/// random shape gives rates `c0 ± big` at shape `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoupledPair {
    pub alpha: f64,
    pub c0: f64,
    pub small: f64,
    pub big: f64,
}

/// A generated comparison: the claim is `spec1 ≤ spec2` in `order`; with
/// `mixing` the compared laws are the shape mixtures `Ñ_{L̃, mixing}` whose
/// latent shapes are the shifted sums of the two specs.
#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub scenario: Scenario,
    pub spec1: ConvolutionSpec,
    pub spec2: ConvolutionSpec,
    pub order: Order,
    pub mixing: Option<f64>,
    pub coupled: Option<CoupledPair>,
    /// Chain on the parameter pairs (`(shapes, scales)` or
    /// `(shapes, ln scales)`) that the construction guarantees.
    pub witness: Option<RcChain>,
}

/// The worked example: `α1 = (0.4, 0.6, 0.5)`, rates `(2, 3, 4)` against
/// `α2 = (0.7, 0.3, 0.5)`, rates `(1, 3, 5)`, with its three-move chain
/// through `((0.4, 0.6, 0.5), (2, 2, 5))` and `((0.7, 0.3, 0.5), (2, 2, 5))`.
pub fn worked_example() -> (ConvolutionSpec, ConvolutionSpec, RcChain) {
    let pc = |x: &[f64], y: &[f64]| PairClass::from_slices(x, y).expect("valid pair");
    let mut c = RcChain::start(pc(&[0.4, 0.6, 0.5], &[2., 3., 4.]), ChainMode::Strict);
    c.push(
        ElementaryMove::MajorizeY { i: 1, j: 2 },
        pc(&[0.4, 0.6, 0.5], &[2., 2., 5.]),
    );
    c.push(
        ElementaryMove::MajorizeX { i: 0, j: 1 },
        pc(&[0.7, 0.3, 0.5], &[2., 2., 5.]),
    );
    c.push(
        ElementaryMove::MajorizeY { i: 0, j: 1 },
        pc(&[0.7, 0.3, 0.5], &[1., 3., 5.]),
    );
    let s1 = ConvolutionSpec::gamma(&[0.4, 0.6, 0.5], &[2., 3., 4.]).expect("valid spec");
    let s2 = ConvolutionSpec::gamma(&[0.7, 0.3, 0.5], &[1., 3., 5.]).expect("valid spec");
    (s1, s2, c)
}

type State = (Vec<f64>, Vec<f64>);

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.random_range(lo..hi)
}

fn draws(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> Vec<f64> {
    (0..n).map(|_| uniform(rng, range)).collect()
}

fn scale_range(family: Family) -> (f64, f64) {
    match family {
        Family::NegBin => SUCCESS,
        Family::Gamma => RATES,
    }
}

fn coord_range(family: Family, log: bool) -> (f64, f64) {
    let r = scale_range(family);
    if log {
        (r.0.ln(), r.1.ln())
    } else {
        r
    }
}

/// Chain through `states` (parameter coordinates) joined by `moves`.
fn chain_of(states: &[State], moves: &[ElementaryMove], mode: ChainMode) -> Result<RcChain> {
    let pair = |s: &State| PairClass::from_slices(&s.0, &s.1);
    let mut c = RcChain::start(pair(&states[0])?, mode);
    for (m, s) in moves.iter().zip(&states[1..]) {
        c.push(*m, pair(s)?);
    }
    Ok(c)
}

fn spec_of(family: Family, (x, y): &State, log: bool) -> Result<ConvolutionSpec> {
    let scales: Vec<f64> = if log {
        y.iter().map(|v| v.exp()).collect()
    } else {
        y.clone()
    };
    match family {
        Family::NegBin => ConvolutionSpec::negbin(x, &scales),
        Family::Gamma => ConvolutionSpec::gamma(x, &scales),
    }
}

/// Spreads `(a, b)` keeping the sum, within `[lo, hi]`; returns `(big, small)`.
fn spread(rng: &mut ChaCha8Rng, a: f64, b: f64, (lo, hi): (f64, f64)) -> (f64, f64) {
    let (s, m) = (a + b, a.max(b));
    let top = (s - lo).min(hi);
    if top <= m {
        return (m, s - m);
    }
    let big = m + rng.random::<f64>() * (top - m);
    (big, s - big)
}

/// One random legal weak move from `cur`.
fn random_move(rng: &mut ChaCha8Rng, cur: &State, xr: (f64, f64), yr: (f64, f64)) -> (ElementaryMove, State) {
    let n = cur.0.len();
    let (mut x, mut y) = cur.clone();
    let kind = if n < 2 {
        rng.random_range(2..4)
    } else {
        rng.random_range(0..4)
    };
    match kind {
        0 | 1 => {
            let i = rng.random_range(0..n - 1);
            let j = rng.random_range(i + 1..n);
            // larger new value goes where the other coordinate is smaller
            if kind == 0 {
                let (big, small) = spread(rng, x[i], x[j], xr);
                let i_big = y[i] <= y[j];
                (x[i], x[j]) = if i_big { (big, small) } else { (small, big) };
                (ElementaryMove::MajorizeX { i, j }, (x, y))
            } else {
                let (big, small) = spread(rng, y[i], y[j], yr);
                let i_big = x[i] <= x[j];
                (y[i], y[j]) = if i_big { (big, small) } else { (small, big) };
                (ElementaryMove::MajorizeY { i, j }, (x, y))
            }
        }
        2 => {
            for v in &mut x {
                *v += 0.3 * rng.random::<f64>() * (xr.1 - *v);
            }
            (ElementaryMove::RaiseX, (x, y))
        }
        _ => {
            for v in &mut y {
                *v -= 0.3 * rng.random::<f64>() * (*v - yr.0);
            }
            (ElementaryMove::LowerY, (x, y))
        }
    }
}

fn random_chain(rng: &mut ChaCha8Rng, n: usize, family: Family, log: bool) -> (Vec<State>, Vec<ElementaryMove>) {
    let (xr, yr) = (SHAPES, coord_range(family, log));
    let mut states = vec![(draws(rng, n, xr), draws(rng, n, yr))];
    let mut moves = Vec::new();
    for _ in 0..rng.random_range(1..=4) {
        let (m, next) = random_move(rng, states.last().unwrap(), xr, yr);
        moves.push(m);
        states.push(next);
    }
    (states, moves)
}

/// `t·v + (1 − t)·(v permuted)`: majorized by `v`.
fn average_with_permutation(rng: &mut ChaCha8Rng, v: &[f64]) -> Vec<f64> {
    let mut perm: Vec<usize> = (0..v.len()).collect();
    perm.shuffle(rng);
    let t = rng.random::<f64>();
    v.iter().zip(&perm).map(|(&a, &k)| t * a + (1.0 - t) * v[k]).collect()
}

fn infeasible(kind: ScenarioKind, n: usize) -> Error {
    Error::InvalidParameter(format!(
        "scenario {kind} needs between {} and {MAX_COMPONENTS} components, got {n}",
        kind.min_components()
    ))
}

/// Generates the instance for `scenario`; deterministic in the seed. The
/// witness is checked with `verify_rc_chain` before the instance is returned.
pub fn generate_instance(scenario: Scenario) -> Result<Instance> {
    let Scenario { kind, n, seed } = scenario;
    if n < kind.min_components() || n > MAX_COMPONENTS {
        return Err(infeasible(kind, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (kind.tag() << 56));
    let rng = &mut rng;
    let family = kind.family();
    let log = kind.order().uses_log_scale();
    let mut mixing = None;
    let mut coupled = None;
    // two active coordinates followed by padding shared by both sides
    let pad_x = draws(rng, n.saturating_sub(2), SHAPES);
    let pad_y = draws(rng, n.saturating_sub(2), coord_range(family, log));
    let padded = |x: [f64; 2], y: [f64; 2]| -> State {
        let mut xs = x.to_vec();
        xs.extend(&pad_x);
        let mut ys = y.to_vec();
        ys.extend(&pad_y);
        (xs, ys)
    };
    let (states, moves, mode): (Vec<State>, Vec<ElementaryMove>, ChainMode) = match kind {
        ScenarioKind::RaiseAlpha => {
            let p = draws(rng, n, SUCCESS);
            let a1 = draws(rng, n, (0.2, 2.5));
            let a2 = a1.iter().map(|&a| a + rng.random::<f64>() * (SHAPES.1 - a)).collect();
            (
                vec![(a1, p.clone()), (a2, p)],
                vec![ElementaryMove::RaiseX],
                ChainMode::Weak,
            )
        }
        ScenarioKind::LowerBeta => {
            let a = draws(rng, n, SHAPES);
            let p1 = draws(rng, n, (0.1, SUCCESS.1));
            let p2 = p1.iter().map(|&p| p - rng.random::<f64>() * (p - SUCCESS.0)).collect();
            (
                vec![(a.clone(), p1), (a, p2)],
                vec![ElementaryMove::LowerY],
                ChainMode::Weak,
            )
        }
        ScenarioKind::MajorizeBeta | ScenarioKind::DiffAlphaMajorizeBeta => {
            let c0 = uniform(rng, (0.2, 0.8));
            let room = (c0 - SUCCESS.0).min(SUCCESS.1 - c0);
            let l2 = rng.random::<f64>() * room;
            let l1 = rng.random::<f64>() * l2;
            let (a1, a2) = if kind == ScenarioKind::MajorizeBeta {
                let a = uniform(rng, SHAPES);
                (a, a)
            } else {
                let (u, v) = (uniform(rng, SHAPES), uniform(rng, SHAPES));
                (u.min(v), u.max(v))
            };
            (
                vec![
                    padded([a1, a2], [c0 + l1, c0 - l1]),
                    padded([a1, a2], [c0 + l2, c0 - l2]),
                ],
                vec![ElementaryMove::MajorizeY { i: 0, j: 1 }],
                ChainMode::Strict,
            )
        }
        ScenarioKind::MajorizeAlpha => {
            let (u, v) = (uniform(rng, SHAPES), uniform(rng, SHAPES));
            let (a21, a22) = (u.min(v), u.max(v));
            let eps = rng.random::<f64>() * (a22 - a21) / 2.0;
            let (u, v) = (uniform(rng, SUCCESS), uniform(rng, SUCCESS));
            let (p1, p2) = (u.max(v), u.min(v));
            (
                vec![padded([a21 + eps, a22 - eps], [p1, p2]), padded([a21, a22], [p1, p2])],
                vec![ElementaryMove::MajorizeX { i: 0, j: 1 }],
                ChainMode::Strict,
            )
        }
        ScenarioKind::ConvAi => {
            let (u, v) = (uniform(rng, SHAPES), uniform(rng, SHAPES));
            let (aa, ab) = (u.min(v), u.max(v));
            let (u, v) = (uniform(rng, SUCCESS), uniform(rng, SUCCESS));
            let (pa, pb) = (u.max(v), u.min(v));
            (
                vec![padded([aa, ab], [pb, pa]), padded([aa, ab], [pa, pb])],
                vec![ElementaryMove::MajorizeY { i: 0, j: 1 }],
                ChainMode::Strict,
            )
        }
        ScenarioKind::GammaConv if seed == 0 => {
            let (spec1, spec2, witness) = worked_example();
            return Ok(Instance {
                scenario,
                spec1,
                spec2,
                order: Order::Conv,
                mixing: None,
                coupled: None,
                witness: Some(witness),
            });
        }
        ScenarioKind::RcGeneral
        | ScenarioKind::GammaConv
        | ScenarioKind::StGeneralNegbin
        | ScenarioKind::StGeneralGamma => {
            let (states, moves) = random_chain(rng, n, family, log);
            (states, moves, ChainMode::Weak)
        }
        ScenarioKind::OppositeOrderedWeak => {
            let mut a2 = draws(rng, n, SHAPES);
            a2.sort_by(f64::total_cmp);
            let mut p2 = draws(rng, n, SUCCESS);
            p2.sort_by(|a, b| b.total_cmp(a));
            let mut a1: Vec<f64> = average_with_permutation(rng, &a2)
                .into_iter()
                .map(|z| z - 0.3 * rng.random::<f64>() * (z - SHAPES.0))
                .collect();
            let mut p1: Vec<f64> = average_with_permutation(rng, &p2)
                .into_iter()
                .map(|w| w + 0.3 * rng.random::<f64>() * (SUCCESS.1 - w))
                .collect();
            a1.shuffle(rng);
            p1.shuffle(rng);
            let pair1 = PairClass::from_slices(&a1, &p1)?;
            let pair2 = PairClass::from_slices(&a2, &p2)?;
            let witness = construct_chain_opposite(&pair1, &pair2, ChainMode::Weak)?;
            return finish(scenario, &[(a1, p1), (a2, p2)], witness, false, None, None);
        }
        ScenarioKind::LogMajorizeBetaSt => {
            let a = uniform(rng, SHAPES);
            let (u, v) = (uniform(rng, SUCCESS), uniform(rng, SUCCESS));
            let (p21, p22) = (u.min(v), u.max(v));
            let r = 1.0 + rng.random::<f64>() * ((p22 / p21).sqrt() - 1.0);
            let (p11, p12) = (p21 * r, p22 / r);
            (
                vec![
                    padded([a, a], [p11.ln(), p12.ln()]),
                    padded([a, a], [p21.ln(), p22.ln()]),
                ],
                vec![ElementaryMove::MajorizeY { i: 0, j: 1 }],
                ChainMode::Strict,
            )
        }
        ScenarioKind::AiTail => {
            // distinct increasing shapes; weights λ = 1/β start opposite to them
            let width = (SHAPES.1 - SHAPES.0) / n as f64;
            let a: Vec<f64> = (0..n)
                .map(|i| SHAPES.0 + width * (i as f64 + 0.1 + 0.8 * rng.random::<f64>()))
                .collect();
            let lw = (1.0 / RATES.0 - 1.0 / RATES.1) / n as f64;
            let mut lambda: Vec<f64> = (0..n)
                .map(|i| 1.0 / RATES.1 + lw * ((n - 1 - i) as f64 + 0.1 + 0.8 * rng.random::<f64>()))
                .collect();
            let ln_beta = |l: &[f64]| l.iter().map(|v| (1.0 / v).ln()).collect::<Vec<_>>();
            let mut states = vec![(a.clone(), ln_beta(&lambda))];
            let mut moves = Vec::new();
            for _ in 0..rng.random_range(1..=2) {
                let inversions: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| lambda[i] > lambda[j])
                    .collect();
                let Some(&(i, j)) = inversions.get(rng.random_range(0..inversions.len().max(1))) else {
                    break;
                };
                lambda.swap(i, j);
                moves.push(ElementaryMove::MajorizeY { i, j });
                states.push((a.clone(), ln_beta(&lambda)));
            }
            (states, moves, ChainMode::Strict)
        }
        ScenarioKind::CoupledGammaPair => {
            let alpha = uniform(rng, SHAPES);
            let c0 = uniform(rng, (0.2, 0.8));
            let big = c0 * uniform(rng, (0.05, 0.95));
            let small = big * uniform(rng, (0.05, 0.95));
            coupled = Some(CoupledPair { alpha, c0, small, big });
            (
                vec![
                    padded([alpha, alpha], [c0 + small, c0 - small]),
                    padded([alpha, alpha], [c0 + big, c0 - big]),
                ],
                vec![ElementaryMove::MajorizeY { i: 0, j: 1 }],
                ChainMode::Strict,
            )
        }
        ScenarioKind::MixtureLemmaSt => {
            mixing = Some(uniform(rng, (0.1, 0.9)));
            let a1 = draws(rng, n, SHAPES);
            let y1: Vec<f64> = draws(rng, n, SUCCESS).iter().map(|p| p.ln()).collect();
            let a2: Vec<f64> = a1
                .iter()
                .map(|&a| a + 0.5 * rng.random::<f64>() * (SHAPES.1 - a))
                .collect();
            let y2: Vec<f64> = y1
                .iter()
                .map(|&y| y - 0.5 * rng.random::<f64>() * (y - SUCCESS.0.ln()))
                .collect();
            (
                vec![(a1, y1.clone()), (a2.clone(), y1), (a2, y2)],
                vec![ElementaryMove::RaiseX, ElementaryMove::LowerY],
                ChainMode::Weak,
            )
        }
    };
    let witness = chain_of(&states, &moves, mode)?;
    finish(scenario, &states, witness, log, mixing, coupled)
}

fn finish(
    scenario: Scenario,
    states: &[State],
    witness: RcChain,
    log: bool,
    mixing: Option<f64>,
    coupled: Option<CoupledPair>,
) -> Result<Instance> {
    if !verify_rc_chain(&witness) {
        return Err(Error::Numeric(format!(
            "scenario {} seed {}: generated chain failed verification",
            scenario.kind, scenario.seed
        )));
    }
    let family = scenario.family();
    Ok(Instance {
        scenario,
        spec1: spec_of(family, &states[0], log)?,
        spec2: spec_of(family, states.last().unwrap(), log)?,
        order: scenario.kind.order(),
        mixing,
        coupled,
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_generates_verified_instances() {
        for kind in ScenarioKind::ALL {
            for n in kind.min_components()..=4 {
                for seed in 0..20 {
                    let inst = generate_instance(Scenario::new(kind, n, seed)).unwrap();
                    assert!(
                        verify_rc_chain(inst.witness.as_ref().unwrap()),
                        "{kind} n={n} seed={seed}"
                    );
                    assert_eq!(inst.spec1.family(), kind.family());
                }
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        for kind in ScenarioKind::ALL {
            let a = generate_instance(Scenario::new(kind, 3, 7)).unwrap();
            let b = generate_instance(Scenario::new(kind, 3, 7)).unwrap();
            assert_eq!(a.spec1, b.spec1);
            assert_eq!(a.spec2, b.spec2);
        }
    }

    #[test]
    fn swap_scenarios_need_two_components() {
        assert!(generate_instance(Scenario::new(ScenarioKind::ConvAi, 1, 0)).is_err());
        assert!(generate_instance(Scenario::new(ScenarioKind::RaiseAlpha, 7, 0)).is_err());
    }

    #[test]
    fn conv_ai_is_one_transposition() {
        let inst = generate_instance(Scenario::new(ScenarioKind::ConvAi, 2, 3)).unwrap();
        assert_eq!(inst.spec1.shapes(), inst.spec2.shapes());
        let (y1, y2) = (inst.spec1.scales().as_slice(), inst.spec2.scales().as_slice());
        assert_eq!((y1[0], y1[1]), (y2[1], y2[0]));
    }

    #[test]
    fn opposite_ordered_target() {
        for seed in 0..20 {
            let inst = generate_instance(Scenario::new(ScenarioKind::OppositeOrderedWeak, 4, seed)).unwrap();
            assert!(inst.spec2.shapes().is_sorted_increasing());
            let p = inst.spec2.scales().as_slice();
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in ScenarioKind::ALL {
            assert_eq!(kind.name().parse::<ScenarioKind>().unwrap(), kind);
        }
        assert!("nope".parse::<ScenarioKind>().is_err());
    }
}
