//! Small optimization toolkit used by the estimators.
//!
//! * [`newton_root_1d`]: Newton–Raphson root finder that falls back to
//!   bisection whenever a step leaves the current sign-change bracket.
//! * [`golden_section_1d`]: derivative-free minimization of a unimodal
//!   function on a finite interval.
//! * [`minimize_bounded`]: projected quasi-Newton (BFGS) minimization under
//!   box constraints with finite-difference gradients.
//!
//! Every routine is deterministic: the same inputs give the same
//! [`OptimResult`], bit for bit.

mod bounded;
mod golden;
mod newton;

use serde::{Deserialize, Serialize};

pub use bounded::{minimize_bounded, MinimizeOptions};
pub use golden::golden_section_1d;
pub use newton::newton_root_1d;

/// Cap for the one-dimensional routines.
pub const MAX_ITER_1D: usize = 200;
/// Cap for [`minimize_bounded`].
pub const MAX_ITER_MULTI: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimResult {
    /// Final iterate (root or minimizer).
    pub point: Vec<f64>,
    /// Function value at `point`.
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Projected-gradient infinity norm for minimizers, `|f|` for roots,
    /// bracket width for golden section.
    pub grad_norm: f64,
}
