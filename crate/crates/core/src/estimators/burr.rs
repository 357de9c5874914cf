use super::{norm_from_square, or_infinite, EstimateReport};
use crate::error::Result;
use crate::models::ParamVector;
use crate::objective::BurrObjective;
use crate::optim::{minimize_bounded, newton_root_1d, MinimizeOptions, MAX_ITER_1D};
use crate::sample::Sample;
use crate::special::{logistic, softplus};
use crate::summation::compensated_sum;

/// Lower bound on `c` and `k` during numerical minimization.
pub const BURR_LOWER_BOUND: f64 = 1e-6;

const ML_BRACKET: (f64, f64) = (1e-3, 1e3);
const ML_TOL: f64 = 1e-10;

/// Stein estimator for `(c, k)` started from `(1, 1)`.
pub fn fit_stein_burr(sample: &Sample, a: f64) -> Result<EstimateReport> {
    fit_stein_burr_from(sample, a, &ParamVector::burr(1.0, 1.0)?)
}

/// Stein estimator for `(c, k)`: bounded quasi-Newton minimization of the
/// closed-form `ψ²` from `init`.
pub fn fit_stein_burr_from(
    sample: &Sample,
    a: f64,
    init: &ParamVector,
) -> Result<EstimateReport> {
    let objective = BurrObjective::new(sample, a)?;
    let lower = [BURR_LOWER_BOUND; 2];
    let upper = [f64::INFINITY; 2];
    let r = minimize_bounded(
        |v| or_infinite(Ok(objective.eval(v[0], v[1]))),
        init.values(),
        &lower,
        &upper,
        &MinimizeOptions::default(),
    )?;
    let params = ParamVector::burr(r.point[0], r.point[1])?;
    let mut report = EstimateReport::from_optim(params, &r);
    report.objective_at_opt = Some(norm_from_square(r.value));
    Ok(report)
}

/// Profile likelihood score in `c` after substituting the ML `k` for fixed
/// `c`.
fn profile_score(ln_x: &[f64], c: f64) -> f64 {
    let n = ln_x.len() as f64;
    let mean_softplus = compensated_sum(ln_x.iter().map(|&l| softplus(c * l))) / n;
    let weighted = compensated_sum(ln_x.iter().map(|&l| l * logistic(c * l)));
    n / c + compensated_sum(ln_x.iter().copied()) - (1.0 / mean_softplus + 1.0) * weighted
}

/// Maximum likelihood for `(c, k)`.
///
/// Newton–Raphson from `c = 1` on the profile score, restricted to
/// `[10⁻³, 10³]`, then `k̂ = n / Σ log(1 + X^ĉ)`. When the profile score has
/// no root in the bracket (for instance when every observation exceeds 1
/// the root can escape to infinity) the error is returned as is.
pub fn fit_mle_burr(sample: &Sample) -> Result<EstimateReport> {
    let ln_x: Vec<f64> = sample.sorted().iter().map(|x| x.ln()).collect();
    let r = newton_root_1d(
        |c| profile_score(&ln_x, c),
        1.0,
        ML_TOL,
        MAX_ITER_1D,
        ML_BRACKET,
    )?;
    let c = r.point[0];
    let n = ln_x.len() as f64;
    let k = n / compensated_sum(ln_x.iter().map(|&l| softplus(c * l)));
    Ok(EstimateReport {
        params: ParamVector::burr(c, k)?,
        objective_at_opt: None,
        converged: r.converged,
        fallback_used: false,
        iterations: r.iterations,
        log_normalizer: None,
    })
}
