//! Parameter estimators.
//!
//! The Stein-type minimum-distance estimators minimize `ψ_{n,q}` from
//! [`crate::objective`]; with `q = 2` the exponential, Rayleigh and exp-poly
//! minimizers are explicit and the Burr one is found numerically. The
//! competitors are maximum likelihood, moment-type estimators, minimum
//! Cramér–von Mises distance, score matching and noise-contrastive
//! estimation.
//!
//! Every estimator returns an [`EstimateReport`]. Numerical failures of an
//! iterative method are reported with `converged = false` rather than as an
//! error; errors are reserved for inputs the method cannot handle at all.

mod burr;
mod cvm;
mod exponential;
mod exppoly;
mod generic;
mod rayleigh;

use serde::{Deserialize, Serialize};

use crate::models::ParamVector;
use crate::optim::OptimResult;

pub use burr::{fit_mle_burr, fit_stein_burr, fit_stein_burr_from, BURR_LOWER_BOUND};
pub use cvm::fit_cvm;
pub use exponential::{fit_mle_exponential, fit_mse_exponential, fit_stein_exponential};
pub use exppoly::{
    fit_nce_exppoly, fit_score_matching_exppoly, fit_stein_exppoly, nce_objective,
    score_matching_objective, NceConfig, THETA3_UPPER_BOUND,
};
pub use generic::fit_stein_generic;
pub use rayleigh::{fit_am_rayleigh, fit_mle_rayleigh, fit_moment_rayleigh, fit_stein_rayleigh};

/// Result of one fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub params: ParamVector,
    /// Value of the minimized objective at `params`: `ψ_{n,q}` for the Stein
    /// estimators, the printed criterion for Cramér–von Mises, score matching
    /// and noise-contrastive estimation. `None` for explicit estimators that
    /// do not minimize anything (ML, moment-type).
    pub objective_at_opt: Option<f64>,
    pub converged: bool,
    /// Set when the unconstrained solution left the parameter space and a
    /// boundary-constrained solution was returned instead.
    pub fallback_used: bool,
    pub iterations: usize,
    /// Estimated log-normalizer `c` (noise-contrastive estimation only).
    pub log_normalizer: Option<f64>,
}

impl EstimateReport {
    pub(crate) fn explicit(params: ParamVector) -> Self {
        Self {
            params,
            objective_at_opt: None,
            converged: true,
            fallback_used: false,
            iterations: 0,
            log_normalizer: None,
        }
    }

    pub(crate) fn closed_form(params: ParamVector, objective: f64) -> Self {
        Self {
            objective_at_opt: Some(objective),
            ..Self::explicit(params)
        }
    }

    pub(crate) fn from_optim(params: ParamVector, r: &OptimResult) -> Self {
        Self {
            params,
            objective_at_opt: Some(r.value),
            converged: r.converged,
            fallback_used: false,
            iterations: r.iterations,
            log_normalizer: None,
        }
    }

    /// Whether the fit counts towards Monte Carlo summaries: converged with
    /// finite coordinates.
    pub fn is_usable(&self) -> bool {
        self.converged && self.params.values().iter().all(|v| v.is_finite())
    }
}

/// `ψ` from a closed-form `ψ²`, absorbing rounding below zero.
pub(crate) fn norm_from_square(psi2: f64) -> f64 {
    psi2.max(0.0).sqrt()
}

/// Wraps a fallible objective for the optimizer: errors become `+∞`, which
/// the line search rejects.
pub(crate) fn or_infinite(r: crate::error::Result<f64>) -> f64 {
    match r {
        Ok(v) if v.is_finite() => v,
        _ => f64::INFINITY,
    }
}
