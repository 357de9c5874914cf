use super::burr::BURR_LOWER_BOUND;
use super::exppoly::THETA3_UPPER_BOUND;
use super::{or_infinite, EstimateReport};
use crate::error::{Error, Result};
use crate::models::{Family, ParamVector};
use crate::objective::{psi_quadrature, LqWeightConfig};
use crate::optim::{minimize_bounded, MinimizeOptions};
use crate::sample::Sample;

fn bounds(family: Family) -> (Vec<f64>, Vec<f64>) {
    match family {
        Family::Exponential | Family::Rayleigh => (vec![1e-10], vec![f64::INFINITY]),
        Family::Burr => (vec![BURR_LOWER_BOUND; 2], vec![f64::INFINITY; 2]),
        Family::ExpPoly => (
            vec![f64::NEG_INFINITY; 2],
            vec![f64::INFINITY, THETA3_UPPER_BOUND],
        ),
    }
}

/// Stein estimator for any family and any `q ≥ 1`: numerical minimization of
/// `ψ_{n,q}^q` evaluated by quadrature, started from `init`.
pub fn fit_stein_generic(
    family: Family,
    sample: &Sample,
    cfg: &LqWeightConfig,
    init: &ParamVector,
) -> Result<EstimateReport> {
    if init.family() != family {
        return Err(Error::WrongDimension {
            family,
            expected: family.dim(),
            got: init.dim(),
        });
    }
    let (lower, upper) = bounds(family);
    let q = cfg.q();
    let r = minimize_bounded(
        |v| {
            or_infinite(
                ParamVector::new(family, v)
                    .and_then(|p| psi_quadrature(&p, sample, cfg))
                    .map(|psi| psi.value.powf(q)),
            )
        },
        init.values(),
        &lower,
        &upper,
        &MinimizeOptions::default(),
    )?;
    let params = ParamVector::new(family, &r.point)?;
    let mut report = EstimateReport::from_optim(params, &r);
    report.objective_at_opt = Some(r.value.max(0.0).powf(1.0 / q));
    Ok(report)
}
