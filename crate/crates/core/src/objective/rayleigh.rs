use serde::{Deserialize, Serialize};

use super::OrderedTerms;
use crate::error::Result;
use crate::sample::Sample;

/// `ψ²(ϑ) = ϑ⁻⁴Ψ̃₁ + ϑ⁻²Ψ̃₂ + Ψ̃₃` for the Rayleigh family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighCoefficients {
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
}

impl RayleighCoefficients {
    pub fn new(sample: &Sample, a: f64) -> Result<Self> {
        let o = OrderedTerms::new(sample, a)?;
        let (n, x, e, om) = (o.n, o.x, &o.e, &o.one_minus_e);
        let a2 = a * a;
        let a3 = a2 * a;
        let nn = n * n;

        let pair1 = 2.0 / a3 * o.pairs(|j| x[j] * om[j], |k| x[k])
            - 1.0 / a2 * o.pairs(|j| x[j] * x[j] * e[j], |k| x[k])
            - 1.0 / a2 * o.pairs(|j| x[j] * x[j], |k| x[k] * e[k]);
        let diag1 = o.sum(|j| {
            2.0 * x[j] * x[j] * om[j] / a3 - 2.0 * x[j] * x[j] * x[j] * e[j] / a2
        });
        let psi1 = 2.0 / nn * pair1 + diag1 / nn;

        let pair2 = o.pairs(|j| x[j] * x[j], |k| e[k] * (1.0 / (a * x[k]) - 1.0) / a)
            + o.pairs(|j| x[j] * x[j] * e[j], |k| 1.0 / (a2 * x[k]))
            - o.pairs(|j| x[j] * e[j], |k| x[k] / a)
            - 2.0 / a3 * o.pairs(|j| om[j] / x[j], |k| x[k])
            - 2.0 / a3 * o.pairs(|j| om[j] * x[j], |k| 1.0 / x[k]);
        let diag2 = o.sum(|j| {
            let r = (j + 1) as f64;
            2.0 * e[j] / a * x[j] * (2.0 * r / a - x[j]) - 4.0 / a3 * om[j]
        });
        let psi2 = 2.0 / nn * pair2 + diag2 / nn;

        let pair3 = o.pairs(|j| x[j] * e[j], |k| 1.0 / (a * x[k]))
            + o.pairs(|j| 2.0 * om[j] / (a3 * x[j]), |k| 1.0 / x[k]);
        let diag3 = o.sum(|j| {
            let r = (j + 1) as f64;
            2.0 * om[j] / (a3 * x[j] * x[j])
                + e[j] / a * (4.0 * r - 1.0 - 2.0 / (a * x[j]) * (2.0 * r - 1.0))
        });
        let psi3 = 2.0 / nn * pair3 + diag3 / nn;

        Ok(Self { psi1, psi2, psi3 })
    }

    pub fn psi2_at(&self, theta: f64) -> f64 {
        let s = 1.0 / (theta * theta);
        (self.psi1 * s + self.psi2) * s + self.psi3
    }

    /// Stationary point `√(−2Ψ̃₁ / Ψ̃₂)`; `NaN` when the ratio is not positive.
    pub fn minimizer(&self) -> f64 {
        let r = -2.0 * self.psi1 / self.psi2;
        if r > 0.0 {
            r.sqrt()
        } else {
            f64::NAN
        }
    }
}

/// Exact `ψ²_{n,2}(ϑ)` for the Rayleigh family, with its coefficients.
pub fn psi2_closed_rayleigh(
    theta: f64,
    sample: &Sample,
    a: f64,
) -> Result<(f64, RayleighCoefficients)> {
    let c = RayleighCoefficients::new(sample, a)?;
    Ok((c.psi2_at(theta), c))
}
