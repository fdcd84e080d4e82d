use crate::moebius::C64;
use serde::Serialize;

/// Difference of two sides of an identity together with the magnitude of the terms involved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: C64,
    pub scale: f64,
}

impl Residual {
    pub fn new(lhs: C64, rhs: C64, scale: f64) -> Self {
        Residual {
            value: lhs - rhs,
            scale: scale.max(lhs.norm()).max(rhs.norm()),
        }
    }

    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

/// Outcome of a gated check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    /// The relation is not asserted for these parameters.
    Ungated,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        }
    }

    /// Ungated checks never count as failures.
    pub fn is_ok(self) -> bool {
        self != CheckStatus::Failed
    }
}
