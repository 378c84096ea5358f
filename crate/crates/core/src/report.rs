//! Structured record of one functional-inequality evaluation: both sides,
//! the sharp constant, the ratio, and a per-term breakdown that sums to the
//! right-hand side.

use serde::Serialize;

use crate::error::{Error, Result};

/// Echo of the numeric configuration a report was produced under.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct QuadConfig {
    pub quad_order: usize,
    pub truncation_degree: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { quad_order: 200, truncation_degree: 40 }
    }
}

/// One inequality evaluation. `ratio = rhs / lhs >= 1` is the inequality
/// itself (up to the evaluation tolerance at equality cases).
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub params: String,
    pub datum: String,
    pub lhs: f64,
    pub rhs: f64,
    pub sharp_constant: f64,
    pub ratio: f64,
    /// Named contributions summing to `rhs` (relative 1e-12).
    pub breakdown: Vec<(String, f64)>,
    /// Side values that are not part of the rhs decomposition
    /// (alternative constants, diagnostics).
    pub extras: Vec<(String, f64)>,
    pub quad: QuadConfig,
}

impl InequalityReport {
    /// Validates the breakdown-sum invariant and returns the report.
    pub fn checked(self) -> Result<Self> {
        let sum: f64 = self.breakdown.iter().map(|(_, v)| v).sum();
        let scale = self.rhs.abs().max(1e-300);
        if (sum - self.rhs).abs() > 1e-12 * scale.max(1.0) {
            return Err(Error::Structural(format!(
                "breakdown sums to {sum}, rhs is {}",
                self.rhs
            )));
        }
        Ok(self)
    }

    pub fn extra(&self, key: &str) -> Option<f64> {
        self.extras.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn term(&self, key: &str) -> Option<f64> {
        self.breakdown.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}
