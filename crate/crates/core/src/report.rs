//! The atomic unit of verification output: one named identity, its
//! Frobenius residual, and the tolerance it was held to.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Operator dimension the check ran at.
    pub dims: usize,
}

impl RelationReport {
    /// `passed` is derived, never set independently.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, dims: usize) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual < tolerance,
            dims,
        }
    }
}

impl std::fmt::Display for RelationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:<58} residual {:>12.3e}  tol {:.0e}  dim {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance,
            self.dims
        )
    }
}
