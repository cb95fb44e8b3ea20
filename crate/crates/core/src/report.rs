//! Pass/fail records produced by the self-test and validation suites.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    /// Passes when `max_deviation` (NaN counts as failure) is below `tolerance`.
    pub fn below(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            passed: max_deviation < tolerance,
            max_deviation,
            tolerance,
            detail: String::new(),
        }
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            max_deviation: f64::NAN,
            tolerance: f64::NAN,
            detail: detail.into(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Tracks the largest deviation seen, treating errors and NaN as infinite.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct MaxDev(pub f64);

impl MaxDev {
    pub fn push(&mut self, d: f64) {
        if d.is_nan() || d > self.0 {
            self.0 = if d.is_nan() { f64::INFINITY } else { d };
        }
    }
}
