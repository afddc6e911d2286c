//! Vector majorization and constructive T-transform chains.
//!
//! Prefix-sum comparisons use [`crate::scaled_tolerance`] over both operands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaled_tolerance;

/// Finite, non-empty list of real parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) = components.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(RealVector(components))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Componentwise natural logarithm; fails on non-positive components.
    pub fn ln(&self) -> Result<RealVector> {
        if let Some(v) = self.0.iter().find(|v| **v <= 0.0) {
            return Err(Error::InvalidParameter(format!("log of non-positive component {v}")));
        }
        Ok(RealVector(self.0.iter().map(|v| v.ln()).collect()))
    }

    pub fn is_sorted_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        RealVector::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

impl std::ops::Index<usize> for RealVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortDirection {
    Inc,
    Dec,
}

/// Stable sort; ties keep their original order.
pub fn sort_components(v: &RealVector, direction: SortDirection) -> RealVector {
    let mut c = v.0.clone();
    match direction {
        SortDirection::Inc => c.sort_by(|a, b| a.total_cmp(b)),
        SortDirection::Dec => c.sort_by(|a, b| b.total_cmp(a)),
    }
    RealVector(c)
}

/// Which majorization relation `x ? y` to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MajorizationMode {
    /// Weak majorization from below: decreasing prefix sums of `x` bounded by those of `y`.
    Below,
    /// Weak majorization from above: increasing prefix sums of `x` dominate those of `y`.
    Above,
    /// Both of the above, hence equal totals.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationCheck {
    pub holds: bool,
    /// Zero-based index of the first violated prefix (prefix length minus one).
    pub violated_prefix: Option<usize>,
}

impl MajorizationCheck {
    const OK: MajorizationCheck = MajorizationCheck {
        holds: true,
        violated_prefix: None,
    };

    fn failed(k: usize) -> Self {
        MajorizationCheck {
            holds: false,
            violated_prefix: Some(k),
        }
    }
}

pub fn check_majorization(x: &RealVector, y: &RealVector, mode: MajorizationMode) -> Result<MajorizationCheck> {
    Error::check_len(x.len(), y.len())?;
    Ok(check_slices(x.as_slice(), y.as_slice(), mode))
}

/// Slice version of [`check_majorization`]; lengths must already agree.
pub(crate) fn check_slices(x: &[f64], y: &[f64], mode: MajorizationMode) -> MajorizationCheck {
    debug_assert_eq!(x.len(), y.len());
    let tol = scaled_tolerance([x, y]);
    match mode {
        MajorizationMode::Below => prefix_check(x, y, tol, SortDirection::Dec),
        MajorizationMode::Above => prefix_check(x, y, tol, SortDirection::Inc),
        MajorizationMode::Full => {
            let below = prefix_check(x, y, tol, SortDirection::Dec);
            if !below.holds {
                return below;
            }
            prefix_check(x, y, tol, SortDirection::Inc)
        }
    }
}

fn prefix_check(x: &[f64], y: &[f64], tol: f64, dir: SortDirection) -> MajorizationCheck {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    let cmp = |a: &f64, b: &f64| match dir {
        SortDirection::Inc => a.total_cmp(b),
        SortDirection::Dec => b.total_cmp(a),
    };
    xs.sort_by(cmp);
    ys.sort_by(cmp);
    let (mut sx, mut sy) = (0.0, 0.0);
    for k in 0..xs.len() {
        sx += xs[k];
        sy += ys[k];
        let ok = match dir {
            // largest-first sums of x must not exceed those of y
            SortDirection::Dec => sx <= sy + tol,
            // smallest-first sums of x must not fall below those of y
            SortDirection::Inc => sx >= sy - tol,
        };
        if !ok {
            return MajorizationCheck::failed(k);
        }
    }
    MajorizationCheck::OK
}

/// One ε-transfer: `b[i] = a[i] - eps`, `b[j] = a[j] + eps`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TStep {
    pub i: usize,
    pub j: usize,
    pub eps: f64,
}

/// Increasing vectors `vectors[0] ≺ vectors[1] ≺ ...`, consecutive ones
/// related by a single [`TStep`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TChain {
    pub vectors: Vec<RealVector>,
    pub steps: Vec<TStep>,
}

impl TChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Builds a chain of T-transforms from `x` to `y`, both sorted increasing,
/// with `x ≺ y`. At most `n - 1` steps are emitted.
///
/// Each step lowers the first coordinate where the current vector still
/// differs from `y` (always a surplus) and raises the last coordinate of the
/// first run of deficits, by the smaller of the two gaps. Every step closes at
/// least one gap, never opens one, and keeps the vector increasing.
pub fn t_transform_chain(x: &RealVector, y: &RealVector) -> Result<TChain> {
    Error::check_len(x.len(), y.len())?;
    if !x.is_sorted_increasing() || !y.is_sorted_increasing() {
        return Err(Error::Precondition(
            "t_transform_chain expects increasing inputs".into(),
        ));
    }
    if !check_slices(x.as_slice(), y.as_slice(), MajorizationMode::Full).holds {
        return Err(Error::Precondition("x is not majorized by y".into()));
    }
    let tol = scaled_tolerance([x.as_slice(), y.as_slice()]);
    let n = x.len();
    let target = y.as_slice();
    let mut cur = x.as_slice().to_vec();
    let mut vectors = vec![x.clone()];
    let mut steps = Vec::new();

    loop {
        for k in 0..n {
            if (cur[k] - target[k]).abs() <= tol {
                cur[k] = target[k];
            }
        }
        let Some(i) = (0..n).find(|&k| cur[k] != target[k]) else {
            break;
        };
        if steps.len() >= n {
            return Err(Error::Numeric(
                "T-transform chain did not terminate within n steps".into(),
            ));
        }
        if cur[i] < target[i] {
            return Err(Error::Numeric(format!("expected a surplus at coordinate {i}")));
        }
        let first_deficit = (i + 1..n)
            .find(|&k| cur[k] < target[k])
            .ok_or_else(|| Error::Numeric("no deficit coordinate found".into()))?;
        let mut j = first_deficit;
        while j + 1 < n && cur[j + 1] < target[j + 1] {
            j += 1;
        }
        let surplus = cur[i] - target[i];
        let deficit = target[j] - cur[j];
        let eps = surplus.min(deficit);
        if surplus <= deficit {
            cur[i] = target[i];
            cur[j] += eps;
        } else {
            cur[i] -= eps;
            cur[j] = target[j];
        }
        // the last step closes both gaps
        if (cur[j] - target[j]).abs() <= tol {
            cur[j] = target[j];
        }
        steps.push(TStep { i, j, eps });
        vectors.push(RealVector(cur.clone()));
    }
    if let Some(last) = vectors.last_mut() {
        *last = y.clone();
    }
    Ok(TChain { vectors, steps })
}

/// True iff `b` arises from `a` by one ε-transfer from a lower coordinate `i`
/// to a higher coordinate `j` (ε ≥ 0; `a == b` counts as ε = 0).
pub fn verify_t_step(a: &RealVector, b: &RealVector) -> Result<bool> {
    Error::check_len(a.len(), b.len())?;
    Ok(t_step_between(a.as_slice(), b.as_slice()).is_some())
}

/// The step relating `a` to `b`, if any.
pub fn t_step_between(a: &[f64], b: &[f64]) -> Option<TStep> {
    let tol = scaled_tolerance([a, b]);
    let diff: Vec<usize> = (0..a.len()).filter(|&k| (a[k] - b[k]).abs() > tol).collect();
    match diff.as_slice() {
        [] => Some(TStep {
            i: 0,
            j: a.len().saturating_sub(1),
            eps: 0.0,
        }),
        &[i, j] => {
            let down = a[i] - b[i];
            let up = b[j] - a[j];
            (down > 0.0 && up > 0.0 && (down - up).abs() <= tol).then_some(TStep { i, j, eps: up })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[f64]) -> RealVector {
        RealVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sorting() {
        assert_eq!(
            sort_components(&rv(&[3., 1., 2.]), SortDirection::Inc),
            rv(&[1., 2., 3.])
        );
        assert_eq!(
            sort_components(&rv(&[3., 1., 2.]), SortDirection::Dec),
            rv(&[3., 2., 1.])
        );
        assert_eq!(sort_components(&rv(&[5.]), SortDirection::Inc), rv(&[5.]));
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(RealVector::new(vec![]), Err(Error::Empty)));
        assert!(matches!(
            RealVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(serde_json::from_str::<RealVector>("[]").is_err());
    }

    #[test]
    fn majorization_examples() {
        let full = check_majorization(&rv(&[1., 2., 3.]), &rv(&[0., 2., 4.]), MajorizationMode::Full).unwrap();
        assert!(full.holds);
        let v = rv(&[0.3, -1.0, 7.0]);
        for mode in [MajorizationMode::Below, MajorizationMode::Above, MajorizationMode::Full] {
            assert!(check_majorization(&v, &v, mode).unwrap().holds);
        }
        let x = rv(&[1., 1.]);
        let y = rv(&[2., 1.]);
        assert!(check_majorization(&x, &y, MajorizationMode::Below).unwrap().holds);
        let f = check_majorization(&x, &y, MajorizationMode::Full).unwrap();
        assert!(!f.holds);
        assert!(check_majorization(&x, &rv(&[1.0]), MajorizationMode::Full).is_err());
    }

    #[test]
    fn first_violated_prefix_is_zero_based() {
        let c = check_majorization(&rv(&[1., 1.]), &rv(&[0., 1.]), MajorizationMode::Below).unwrap();
        assert_eq!(
            c,
            MajorizationCheck {
                holds: false,
                violated_prefix: Some(1)
            }
        );
        let c = check_majorization(&rv(&[3., 0.]), &rv(&[1., 1.]), MajorizationMode::Below).unwrap();
        assert_eq!(c.violated_prefix, Some(0));
    }

    #[test]
    fn chain_examples() {
        let c = t_transform_chain(&rv(&[1., 2.]), &rv(&[1., 2.])).unwrap();
        assert_eq!(c.vectors.len(), 1);
        assert!(c.steps.is_empty());

        let c = t_transform_chain(&rv(&[1., 3.]), &rv(&[0., 4.])).unwrap();
        assert_eq!(c.vectors, vec![rv(&[1., 3.]), rv(&[0., 4.])]);
        assert_eq!(c.steps, vec![TStep { i: 0, j: 1, eps: 1.0 }]);
        assert!(verify_t_step(&c.vectors[0], &c.vectors[1]).unwrap());

        let c = t_transform_chain(&rv(&[1., 2., 3.]), &rv(&[0., 2., 4.])).unwrap();
        assert_eq!(c.steps, vec![TStep { i: 0, j: 2, eps: 1.0 }]);
        assert!(
            check_majorization(&c.vectors[0], &c.vectors[1], MajorizationMode::Full)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn chain_keeps_sorted_through_tie_blocks() {
        let c = t_transform_chain(&rv(&[2., 2., 2., 2.]), &rv(&[1., 1., 3., 3.])).unwrap();
        assert!(c.vectors.iter().all(RealVector::is_sorted_increasing));
        assert!(c.vectors.len() <= 4);
        assert_eq!(c.vectors.last().unwrap(), &rv(&[1., 1., 3., 3.]));
    }

    #[test]
    fn chain_preconditions() {
        assert!(matches!(
            t_transform_chain(&rv(&[2., 1.]), &rv(&[0., 3.])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            t_transform_chain(&rv(&[0., 4.]), &rv(&[1., 3.])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn t_step_examples() {
        assert!(verify_t_step(&rv(&[1., 3.]), &rv(&[0., 4.])).unwrap());
        assert!(!verify_t_step(&rv(&[1., 3.]), &rv(&[2., 2.])).unwrap());
        assert!(verify_t_step(&rv(&[1., 3.]), &rv(&[1., 3.])).unwrap());
        assert!(!verify_t_step(&rv(&[1., 3., 5.]), &rv(&[0., 3., 5.5])).unwrap());
        assert!(verify_t_step(&rv(&[1.]), &rv(&[1., 2.])).is_err());
    }
}
