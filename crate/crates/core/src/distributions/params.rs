use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::RealVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NegBinParams {
    alpha: f64,
    p: f64,
}

impl NegBinParams {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "negative binomial shape {alpha} must be positive"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "success probability {p} must lie in (0, 1)"
            )));
        }
        Ok(NegBinParams { alpha, p })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn mean(&self) -> f64 {
        self.alpha * self.q() / self.p
    }

    pub fn variance(&self) -> f64 {
        self.alpha * self.q() / (self.p * self.p)
    }
}

/// Gamma law with density `β^α t^{α−1} e^{−βt} / Γ(α)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaParams {
    alpha: f64,
    beta: f64,
}

impl GammaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma shape {alpha} must be positive")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma rate {beta} must be positive")));
        }
        Ok(GammaParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    NegBin,
    Gamma,
}

/// Independent sum of `n` negative binomial or gamma components. For
/// `negbin` the scales are success probabilities, for `gamma` rates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ConvolutionSpec {
    family: Family,
    shapes: RealVector,
    scales: RealVector,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    family: Family,
    shapes: RealVector,
    scales: RealVector,
}

impl TryFrom<SpecRepr> for ConvolutionSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        ConvolutionSpec::new(r.family, r.shapes, r.scales)
    }
}

impl From<ConvolutionSpec> for SpecRepr {
    fn from(s: ConvolutionSpec) -> Self {
        SpecRepr {
            family: s.family,
            shapes: s.shapes,
            scales: s.scales,
        }
    }
}

impl ConvolutionSpec {
    pub fn new(family: Family, shapes: RealVector, scales: RealVector) -> Result<Self> {
        Error::check_len(shapes.len(), scales.len())?;
        for (&a, &s) in shapes.as_slice().iter().zip(scales.as_slice()) {
            match family {
                Family::NegBin => NegBinParams::new(a, s).map(|_| ())?,
                Family::Gamma => GammaParams::new(a, s).map(|_| ())?,
            }
        }
        Ok(ConvolutionSpec { family, shapes, scales })
    }

    pub fn negbin(shapes: &[f64], ps: &[f64]) -> Result<Self> {
        Self::new(
            Family::NegBin,
            RealVector::new(shapes.to_vec())?,
            RealVector::new(ps.to_vec())?,
        )
    }

    pub fn gamma(shapes: &[f64], rates: &[f64]) -> Result<Self> {
        Self::new(
            Family::Gamma,
            RealVector::new(shapes.to_vec())?,
            RealVector::new(rates.to_vec())?,
        )
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shapes(&self) -> &RealVector {
        &self.shapes
    }

    pub fn scales(&self) -> &RealVector {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// `R = Σ α_i`.
    pub fn total_shape(&self) -> f64 {
        self.shapes.sum()
    }

    pub fn negbin_components(&self) -> Result<Vec<NegBinParams>> {
        self.expect_family(Family::NegBin)?;
        self.shapes
            .as_slice()
            .iter()
            .zip(self.scales.as_slice())
            .map(|(&a, &p)| NegBinParams::new(a, p))
            .collect()
    }

    pub fn gamma_components(&self) -> Result<Vec<GammaParams>> {
        self.expect_family(Family::Gamma)?;
        self.shapes
            .as_slice()
            .iter()
            .zip(self.scales.as_slice())
            .map(|(&a, &b)| GammaParams::new(a, b))
            .collect()
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::Precondition(format!(
                "expected a {family:?} specification, got {:?}",
                self.family
            )));
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        let it = self.shapes.as_slice().iter().zip(self.scales.as_slice());
        match self.family {
            Family::NegBin => it.map(|(a, p)| a * (1.0 - p) / p).sum(),
            Family::Gamma => it.map(|(a, b)| a / b).sum(),
        }
    }

    pub fn variance(&self) -> f64 {
        let it = self.shapes.as_slice().iter().zip(self.scales.as_slice());
        match self.family {
            Family::NegBin => it.map(|(a, p)| a * (1.0 - p) / (p * p)).sum(),
            Family::Gamma => it.map(|(a, b)| a / (b * b)).sum(),
        }
    }

    /// Same spec with components reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let pick = |v: &RealVector| RealVector::new(order.iter().map(|&i| v[i]).collect());
        Self::new(self.family, pick(&self.shapes)?, pick(&self.scales)?)
    }
}
