//! Outcomes of identity checks.

use serde::Serialize;
use serde_json::Value;

/// The result of evaluating one identity on one input tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub case_index: usize,
    pub residual_is_zero: bool,
    /// Inputs and residual, recorded only when the residual is nonzero
    /// (or when a check is expected to fail and records its witness).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckOutcome {
    /// Builds an outcome; `witness` is only evaluated when the residual is nonzero.
    pub fn new(
        check: impl Into<String>,
        case_index: usize,
        residual_is_zero: bool,
        witness: impl FnOnce() -> Value,
    ) -> Self {
        CheckOutcome {
            check: check.into(),
            case_index,
            residual_is_zero,
            witness: (!residual_is_zero).then(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.residual_is_zero
    }
}

pub fn all_zero(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(CheckOutcome::passed)
}

/// First failing outcome, if any.
pub fn first_failure(outcomes: &[CheckOutcome]) -> Option<&CheckOutcome> {
    outcomes.iter().find(|o| !o.passed())
}

/// A yes/no property of a structure, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: Value) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}
