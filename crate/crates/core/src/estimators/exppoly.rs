use std::cell::Cell;

use rand::Rng;

use super::{norm_from_square, EstimateReport};
use crate::error::{Error, Result};
use crate::models::{sample as draw, Family, ParamVector};
use crate::objective::ExpPolyCoefficients;
use crate::optim::{minimize_bounded, MinimizeOptions};
use crate::sample::Sample;
use crate::special::softplus;
use crate::summation::compensated_sum;

/// Largest admissible `ϑ₃` for constrained fits.
pub const THETA3_UPPER_BOUND: f64 = -1e-8;

/// Stein estimator for `(ϑ₁, ϑ₃)`: the stationary point of the closed-form
/// quadratic.
///
/// When that point has `ϑ₃ ≥ 0` the quadratic is minimized on the boundary
/// `ϑ₃ = THETA3_UPPER_BOUND` instead (the constrained minimizer of a convex
/// quadratic whose unconstrained minimizer is infeasible lies on the
/// boundary) and `fallback_used` is set.
pub fn fit_stein_exppoly(sample: &Sample, a: f64) -> Result<EstimateReport> {
    let c = ExpPolyCoefficients::new(sample, a)?;
    let [t1, t3] = c
        .stationary_point()
        .ok_or(Error::Singular("the exp-poly Stein estimator"))?;
    let (point, fallback) = if t3 < THETA3_UPPER_BOUND {
        ([t1, t3], false)
    } else {
        let [p1, _, p3, p4, _] = c.psi;
        let t3 = THETA3_UPPER_BOUND;
        ([-(p3 * t3 + p4) / (2.0 * p1), t3], true)
    };
    let params = ParamVector::new(Family::ExpPoly, &point)
        .map_err(|_| Error::Singular("the exp-poly Stein estimator"))?;
    let mut report =
        EstimateReport::closed_form(params, norm_from_square(c.psi2_at(point[0], point[1])));
    report.fallback_used = fallback;
    Ok(report)
}

fn power_sums(sample: &Sample) -> [f64; 7] {
    let mut m = [0.0; 7];
    for (k, slot) in m.iter_mut().enumerate() {
        *slot = compensated_sum(sample.sorted().iter().map(|x| x.powi(k as i32)));
    }
    m
}

/// `(1/n) Σ_j [2ϑ₁X_j + 12ϑ₃X_j³ + ½(ϑ₁X_j + 3ϑ₃X_j³)²]`, the score matching
/// criterion for non-negative data.
pub fn score_matching_objective(theta1: f64, theta3: f64, sample: &Sample) -> f64 {
    let n = sample.len() as f64;
    compensated_sum(sample.sorted().iter().map(|&x| {
        let x3 = x * x * x;
        let s = theta1 * x + 3.0 * theta3 * x3;
        2.0 * theta1 * x + 12.0 * theta3 * x3 + 0.5 * s * s
    })) / n
}

/// Score matching estimator, explicit in the power sums `m_k = Σ X_j^k`.
///
/// The criterion is unconstrained, so the estimate may have `ϑ₃ ≥ 0`; it is
/// returned as is (see [`ParamVector::in_param_space`]).
pub fn fit_score_matching_exppoly(sample: &Sample) -> Result<EstimateReport> {
    let m = power_sums(sample);
    let den = 3.0 * m[4] * m[4] - 3.0 * m[2] * m[6];
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Singular("the score matching estimator"));
    }
    let t3 = (4.0 * m[2] * m[3] - 2.0 * m[1] * m[4]) / den;
    let t1 = -(2.0 * m[1] + 3.0 * m[4] * t3) / m[2];
    let params = ParamVector::unconstrained(Family::ExpPoly, &[t1, t3])
        .map_err(|_| Error::Singular("the score matching estimator"))?;
    Ok(EstimateReport::closed_form(
        params,
        score_matching_objective(t1, t3, sample),
    ))
}

/// Settings for noise-contrastive estimation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NceConfig {
    /// Noise points per observation.
    pub nu: u32,
    /// Start `(ϑ₁, ϑ₃, c)`.
    pub initial: [f64; 3],
    /// Upper bound on `ϑ₃`.
    pub theta3_upper: f64,
    pub options: MinimizeOptions,
}

impl Default for NceConfig {
    fn default() -> Self {
        Self {
            nu: 10,
            initial: [0.0, -0.1, 0.0],
            theta3_upper: THETA3_UPPER_BOUND,
            options: MinimizeOptions::default(),
        }
    }
}

impl NceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nu == 0 {
            return Err(Error::InvalidConfig("noise multiple ν must be at least 1".into()));
        }
        if !(self.theta3_upper < 0.0) {
            return Err(Error::InvalidConfig("the ϑ₃ bound must be negative".into()));
        }
        if !(self.initial.iter().all(|v| v.is_finite()) && self.initial[1] <= self.theta3_upper)
        {
            return Err(Error::InvalidConfig(format!(
                "initial point {:?} must be finite with ϑ₃ ≤ {}",
                self.initial, self.theta3_upper
            )));
        }
        Ok(())
    }
}

/// Noise-contrastive criterion `J(ϑ₁, ϑ₃, c)` for data `x`, noise `y` drawn
/// from `Exp(λ)`, and `ν = |y| / |x|`.
///
/// With `ℓ(z) = log(νλ) − (λ + ϑ₁)z − ϑ₃z³ − c`,
/// `J = (1/n) Σ_j log(1 + e^{ℓ(X_j)}) + (1/n) Σ_k log(1 + e^{−ℓ(Y_k)})`,
/// evaluated with a stable softplus so that no exponential overflows.
pub fn nce_objective(theta: [f64; 3], x: &[f64], y: &[f64], lambda: f64) -> f64 {
    let n = x.len() as f64;
    let nu = y.len() as f64 / n;
    let base = (nu * lambda).ln();
    let [t1, t3, c] = theta;
    let ell = |z: f64| base - (lambda + t1) * z - t3 * z * z * z - c;
    let data = compensated_sum(x.iter().map(|&z| softplus(ell(z))));
    let noise = compensated_sum(y.iter().map(|&z| softplus(-ell(z))));
    (data + noise) / n
}

/// Noise-contrastive estimator of `(ϑ₁, ϑ₃)` and the log-normalizer `c`.
///
/// Draws `ν·n` noise points from `Exp(λ_n)`, `λ_n = n / Σ X_j`, using `rng`
/// and minimizes [`nce_objective`] with `ϑ₃ ≤ cfg.theta3_upper`. A
/// non-finite objective value anywhere during the search marks the fit as
/// not converged.
pub fn fit_nce_exppoly<R: Rng + ?Sized>(
    sample: &Sample,
    cfg: &NceConfig,
    rng: &mut R,
) -> Result<EstimateReport> {
    cfg.validate()?;
    let n = sample.len();
    let lambda = n as f64 / sample.sum_of(|x| x);
    let noise = draw(&ParamVector::exponential(lambda)?, cfg.nu as usize * n, rng)?;
    let all_finite = Cell::new(true);
    let r = minimize_bounded(
        |v| {
            let value = nce_objective([v[0], v[1], v[2]], sample.sorted(), noise.sorted(), lambda);
            if !value.is_finite() {
                all_finite.set(false);
            }
            value
        },
        &cfg.initial,
        &[f64::NEG_INFINITY; 3],
        &[f64::INFINITY, cfg.theta3_upper, f64::INFINITY],
        &cfg.options,
    )?;
    let params = ParamVector::exp_poly(r.point[0], r.point[1])?;
    let mut report = EstimateReport::from_optim(params, &r);
    report.converged &= all_finite.get();
    report.log_normalizer = Some(r.point[2]);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn score_matching_is_stationary() {
        let truth = ParamVector::exp_poly(1.0, -0.05).unwrap();
        let s = draw(&truth, 100, &mut seeded(31)).unwrap();
        let r = fit_score_matching_exppoly(&s).unwrap();
        let [t1, t3] = [r.params.values()[0], r.params.values()[1]];
        let m = power_sums(&s);
        let g1 = 2.0 * m[1] + t1 * m[2] + 3.0 * t3 * m[4];
        let g3 = 12.0 * m[3] + 3.0 * t1 * m[4] + 9.0 * t3 * m[6];
        let scale = m[6].abs().max(1.0);
        assert!(g1.abs() < 1e-8 * scale && g3.abs() < 1e-8 * scale, "{g1} {g3}");
    }

    #[test]
    fn stein_fallback_lands_on_boundary() {
        // A sample that looks heavier-tailed than any ϑ₃ < 0 allows.
        let s = Sample::new((1..=40).map(|i| (i as f64 / 8.0).exp()).collect()).unwrap();
        let r = fit_stein_exppoly(&s, 1.0).unwrap();
        if r.fallback_used {
            assert_eq!(r.params.values()[1], THETA3_UPPER_BOUND);
        }
        assert!(r.params.in_param_space());
    }

    #[test]
    fn nce_objective_is_finite_for_extreme_points() {
        let x = [0.1, 1.0, 1e3];
        let y: Vec<f64> = (1..=30).map(|k| k as f64 * 40.0).collect();
        for theta in [[0.0, -0.1, 0.0], [50.0, -1e-8, -300.0], [-40.0, -1e4, 700.0]] {
            assert!(nce_objective(theta, &x, &y, 0.003).is_finite());
        }
    }

    #[test]
    fn nce_config_validation() {
        assert!(NceConfig::default().validate().is_ok());
        let bad = NceConfig {
            nu: 0,
            ..NceConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = NceConfig {
            initial: [0.0, 0.5, 0.0],
            ..NceConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
