//! Numerical verification and falsification engine for exponential
//! integrability inequalities on probability spaces.
//!
//! The crate evaluates both sides of a family of inequalities of the shape
//!
//! ```text
//!     ∫ e^f dμ  ≤  F( ∫ G(|f'|) dμ )
//! ```
//!
//! over Gaussian, sub-Gaussian and Poisson reference measures, reproduces the
//! explicit constants entering those bounds, and exposes the machinery they
//! are built from (convex conjugates, Gaussian rearrangement, the
//! Ornstein-Uhlenbeck semigroup, Hardy/Muckenhoupt constants) as a reusable
//! library.
//!
//! Everything is deterministic and pure: checkers take value types and return
//! [`report::InequalityReport`] values, so sweeps parallelise freely (see the
//! `parallel` feature, enabled by default).

pub mod audit;
pub mod checkers;
pub mod conjugate;
pub mod function;
pub mod measure;
pub mod opt;
pub mod par;
pub mod poisson;
pub mod quad;
pub mod rearrange;
pub mod report;
pub mod scan;
pub mod semigroup;
pub mod special;
pub mod suite;
pub mod transfer;

use thiserror::Error;

/// Errors surfaced by the numerical layer.
///
/// `NonFiniteIntegrand` usually signals an inadmissible test function (the
/// right-hand side of the inequality is +∞), not a numerical bug; checkers
/// translate it into a vacuously-true report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("quadrature refinement exhausted (residual error {residual:e})")]
    ToleranceNotMet { residual: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("value {value} outside the invertible range [{lo}, {hi}]")]
    Range { value: f64, lo: f64, hi: f64 },
    #[error("objective still increasing at the scan-window edge x = {edge}")]
    Unbounded { edge: f64 },
    #[error("sampled 1-Lipschitz check failed: |ΔT/Δx| = {slope} at x = {x}")]
    NotLogConcave { slope: f64, x: f64 },
    #[error("truncated-chain boundary terms carry {defect:e} of the total")]
    Truncation { defect: f64 },
    #[error("overflow: {what} exceeds the representable range")]
    Overflow { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

pub use function::{FamilySpec, Function1D};
pub use measure::MeasureSpec;
pub use quad::{QuadratureConfig, QuadratureScheme};
pub use report::InequalityReport;
