//! Three-valued outcome shared by the parameter-order engine and the numeric
//! oracles.

use serde::{Deserialize, Serialize};

/// Record of a failed check: which condition, where, and by how much.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    /// Zero-based index (prefix, lattice point or grid point) of the worst or
    /// first failure, when the condition is indexed.
    pub index: Option<usize>,
    /// Location on the real line (lattice point / grid point) if meaningful.
    pub at: Option<f64>,
    /// Size of the violation; positive means "violated by this much".
    pub magnitude: f64,
}

impl Violation {
    pub fn new(condition: impl Into<String>) -> Self {
        Violation {
            condition: condition.into(),
            index: None,
            at: None,
            magnitude: 0.0,
        }
    }

    pub fn at_index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    pub fn at_point(mut self, t: f64) -> Self {
        self.at = Some(t);
        self
    }

    pub fn with_magnitude(mut self, magnitude: f64) -> Self {
        self.magnitude = magnitude;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OrderVerdict<W> {
    Holds { evidence: W },
    Refuted { violation: Violation },
    Unknown { reason: String },
}

impl<W> OrderVerdict<W> {
    pub fn holds(evidence: W) -> Self {
        OrderVerdict::Holds { evidence }
    }

    pub fn refuted(violation: Violation) -> Self {
        OrderVerdict::Refuted { violation }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        OrderVerdict::Unknown { reason: reason.into() }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, OrderVerdict::Holds { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, OrderVerdict::Refuted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, OrderVerdict::Unknown { .. })
    }

    pub fn evidence(&self) -> Option<&W> {
        match self {
            OrderVerdict::Holds { evidence } => Some(evidence),
            _ => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            OrderVerdict::Refuted { violation } => Some(violation),
            _ => None,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self {
            OrderVerdict::Holds { .. } => "holds",
            OrderVerdict::Refuted { .. } => "refuted",
            OrderVerdict::Unknown { .. } => "unknown",
        }
    }

    /// Process exit code mirroring the verdict: 0 holds, 1 refuted, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            OrderVerdict::Holds { .. } => 0,
            OrderVerdict::Refuted { .. } => 1,
            OrderVerdict::Unknown { .. } => 2,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> OrderVerdict<U> {
        match self {
            OrderVerdict::Holds { evidence } => OrderVerdict::Holds { evidence: f(evidence) },
            OrderVerdict::Refuted { violation } => OrderVerdict::Refuted { violation },
            OrderVerdict::Unknown { reason } => OrderVerdict::Unknown { reason },
        }
    }
}
