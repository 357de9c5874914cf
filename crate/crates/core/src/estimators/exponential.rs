use super::{norm_from_square, EstimateReport};
use crate::error::{Error, Result};
use crate::models::ParamVector;
use crate::objective::ExponentialCoefficients;
use crate::sample::Sample;

/// Stein estimator `−Ψ₂ / (2Ψ₁)` with weight `e^{−at}`.
pub fn fit_stein_exponential(sample: &Sample, a: f64) -> Result<EstimateReport> {
    let c = ExponentialCoefficients::new(sample, a)?;
    if !(c.psi1 > 0.0) {
        return Err(Error::DegenerateSample("the exponential Stein estimator"));
    }
    let theta = c.minimizer();
    let params = ParamVector::exponential(theta)
        .map_err(|_| Error::DegenerateSample("the exponential Stein estimator"))?;
    Ok(EstimateReport::closed_form(
        params,
        norm_from_square(c.psi2_at(theta)),
    ))
}

/// Maximum likelihood: the reciprocal sample mean.
pub fn fit_mle_exponential(sample: &Sample) -> Result<EstimateReport> {
    Ok(EstimateReport::explicit(ParamVector::exponential(
        1.0 / sample.mean(),
    )?))
}

/// `(n − 2) / Σ X_j`, the multiple of the ML estimator with least MSE.
pub fn fit_mse_exponential(sample: &Sample) -> Result<EstimateReport> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::SampleTooSmall {
            estimator: "minimum-MSE exponential",
            required: 3,
            got: n,
        });
    }
    let total = sample.sum_of(|x| x);
    Ok(EstimateReport::explicit(ParamVector::exponential(
        (n - 2) as f64 / total,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_examples() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(fit_mle_exponential(&s).unwrap().params.values(), &[0.5]);
        let mse = fit_mse_exponential(&s).unwrap().params.values()[0];
        assert!((mse - 1.0 / 6.0).abs() < 1e-15);
        let two = Sample::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            fit_mse_exponential(&two),
            Err(Error::SampleTooSmall { required: 3, got: 2, .. })
        ));
    }

    #[test]
    fn stein_single_observation() {
        let s = Sample::new(vec![1.0]).unwrap();
        let r = fit_stein_exponential(&s, 1.0).unwrap();
        assert!(r.params.values()[0] > 0.0);
        assert!(r.converged && !r.fallback_used);
        assert!(r.objective_at_opt.unwrap() >= 0.0);
    }
}
