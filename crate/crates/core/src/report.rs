//! Structured outcomes: one [`InequalityReport`] per checked inequality and
//! one [`AuditEntry`] per reproduced constant. Serialisation is
//! deterministic (sorted parameter maps), so identical runs emit identical
//! bytes.

use serde::Serialize;
use std::collections::BTreeMap;

/// Default absolute tolerance on inequality margins.
pub const MARGIN_TOL: f64 = 1e-6;
/// Margin tolerance when a side involves finite-difference derivatives.
pub const MARGIN_TOL_FD: f64 = 1e-4;

/// Outcome of one inequality check: both sides, the margin rhs − lhs (or the
/// documented per-id variant), parameters, and the quadrature error carried
/// by the dominant integral.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub inequality_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub vacuous: bool,
    pub params: BTreeMap<String, f64>,
    pub quadrature_error: f64,
    pub function_tag: String,
}

impl InequalityReport {
    /// Report with margin = rhs − lhs and the default tolerance.
    pub fn two_sided(id: &str, lhs: f64, rhs: f64, tag: &str) -> Self {
        Self::with_tol(id, lhs, rhs, tag, MARGIN_TOL)
    }

    pub fn with_tol(id: &str, lhs: f64, rhs: f64, tag: &str, tol: f64) -> Self {
        let margin = rhs - lhs;
        InequalityReport {
            inequality_id: id.to_string(),
            lhs,
            rhs,
            margin,
            satisfied: margin >= -tol,
            vacuous: false,
            params: BTreeMap::new(),
            quadrature_error: 0.0,
            function_tag: tag.to_string(),
        }
    }

    /// Vacuously true report: the right-hand side is +∞ (the test function
    /// is outside the admissible class, which the theorems allow).
    pub fn vacuous(id: &str, lhs: f64, tag: &str) -> Self {
        InequalityReport {
            inequality_id: id.to_string(),
            lhs,
            rhs: f64::INFINITY,
            margin: f64::INFINITY,
            satisfied: true,
            vacuous: true,
            params: BTreeMap::new(),
            quadrature_error: 0.0,
            function_tag: tag.to_string(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_quad_error(mut self, err: f64) -> Self {
        self.quadrature_error = err;
        self
    }

    /// `satisfied` honouring an extra side condition (e.g. both corollary
    /// forms holding at once).
    pub fn and_condition(mut self, ok: bool) -> Self {
        self.satisfied = self.satisfied && ok;
        self
    }
}

/// One reproduced constant: the claimed interval (or one-sided bound) and
/// the independently computed value.
#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub id: String,
    pub description: String,
    pub computed: f64,
    pub claimed_lo: f64,
    pub claimed_hi: f64,
    pub pass: bool,
}

impl AuditEntry {
    pub fn interval(id: &str, description: &str, computed: f64, lo: f64, hi: f64) -> Self {
        AuditEntry {
            id: id.to_string(),
            description: description.to_string(),
            computed,
            claimed_lo: lo,
            claimed_hi: hi,
            pass: computed >= lo && computed <= hi,
        }
    }

    pub fn at_least(id: &str, description: &str, computed: f64, lo: f64) -> Self {
        Self::interval(id, description, computed, lo, f64::INFINITY)
    }

    pub fn at_most(id: &str, description: &str, computed: f64, hi: f64) -> Self {
        Self::interval(id, description, computed, f64::NEG_INFINITY, hi)
    }

    /// Requires an extra structural condition (sign changes at interval
    /// endpoints rather than trust in the root finder).
    pub fn and_condition(mut self, ok: bool) -> Self {
        self.pass = self.pass && ok;
        self
    }
}
