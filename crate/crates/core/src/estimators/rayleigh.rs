use std::f64::consts::PI;

use super::{norm_from_square, EstimateReport};
use crate::error::{Error, Result};
use crate::models::ParamVector;
use crate::objective::RayleighCoefficients;
use crate::sample::Sample;

/// Stein estimator `√(−2Ψ̃₁ / Ψ̃₂)` with weight `e^{−at}`.
pub fn fit_stein_rayleigh(sample: &Sample, a: f64) -> Result<EstimateReport> {
    let c = RayleighCoefficients::new(sample, a)?;
    let theta = c.minimizer();
    let params = ParamVector::rayleigh(theta)
        .map_err(|_| Error::DegenerateSample("the Rayleigh Stein estimator"))?;
    Ok(EstimateReport::closed_form(
        params,
        norm_from_square(c.psi2_at(theta)),
    ))
}

/// Maximum likelihood `√(Σ X² / (2n))`.
pub fn fit_mle_rayleigh(sample: &Sample) -> Result<EstimateReport> {
    let n = sample.len() as f64;
    let theta = (sample.sum_of(|x| x * x) / (2.0 * n)).sqrt();
    Ok(EstimateReport::explicit(ParamVector::rayleigh(theta)?))
}

/// Moment estimator `√(2/π)·X̄`, unbiased.
pub fn fit_moment_rayleigh(sample: &Sample) -> Result<EstimateReport> {
    let theta = (2.0 / PI).sqrt() * sample.mean();
    Ok(EstimateReport::explicit(ParamVector::rayleigh(theta)?))
}

/// `√(X̄ / mean(1/X))`, from `E[X]·E[1/X]⁻¹ = ϑ²`.
pub fn fit_am_rayleigh(sample: &Sample) -> Result<EstimateReport> {
    let n = sample.len() as f64;
    let inv_mean = sample.sum_of(|x| 1.0 / x) / n;
    let theta = (sample.mean() / inv_mean).sqrt();
    Ok(EstimateReport::explicit(ParamVector::rayleigh(theta)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(r: Result<EstimateReport>) -> f64 {
        r.unwrap().params.values()[0]
    }

    #[test]
    fn explicit_examples() {
        let ones = Sample::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!((value(fit_am_rayleigh(&ones)) - 1.0).abs() < 1e-15);
        let s = Sample::new(vec![1.0, 4.0]).unwrap();
        assert!((value(fit_am_rayleigh(&s)) - 2.0).abs() < 1e-15);
        let s = Sample::new(vec![1.0, 1.0]).unwrap();
        assert!((value(fit_mle_rayleigh(&s)) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((value(fit_moment_rayleigh(&s)) - (2.0 / PI).sqrt()).abs() < 1e-15);
    }
}
