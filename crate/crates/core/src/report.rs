//! Uniform result carrier for inequality checks.

use serde::Serialize;

/// Default relative tolerance on lhs/rhs ratios. The inequalities checked in
/// this crate are homogeneous, so comparisons are relative, never absolute.
pub const DEFAULT_RATIO_TOL: f64 = 1e-9;

/// Outcome of a single inequality check: the check passes when
/// lhs ≥ rhs up to a relative tolerance on the ratio.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub theorem_id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs/rhs; +∞ when rhs = 0 (vacuous bound).
    pub ratio: f64,
    pub pass: bool,
    pub tol: f64,
    pub context: Vec<(String, f64)>,
}

impl InequalityReport {
    pub fn new(theorem_id: &str, lhs: f64, rhs: f64, context: Vec<(String, f64)>) -> Self {
        Self::with_tol(theorem_id, lhs, rhs, DEFAULT_RATIO_TOL, context)
    }

    pub fn with_tol(
        theorem_id: &str,
        lhs: f64,
        rhs: f64,
        tol: f64,
        context: Vec<(String, f64)>,
    ) -> Self {
        let ratio = if rhs == 0.0 { f64::INFINITY } else { lhs / rhs };
        InequalityReport {
            theorem_id: theorem_id.to_string(),
            lhs,
            rhs,
            ratio,
            pass: ratio >= 1.0 - tol,
            tol,
            context,
        }
    }
}
