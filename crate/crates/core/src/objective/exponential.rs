use serde::{Deserialize, Serialize};

use super::OrderedTerms;
use crate::error::Result;
use crate::sample::Sample;

/// `ψ²(ϑ) = ϑ²Ψ₁ + ϑΨ₂ + Ψ₃` for the exponential family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialCoefficients {
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
}

impl ExponentialCoefficients {
    pub fn new(sample: &Sample, a: f64) -> Result<Self> {
        let o = OrderedTerms::new(sample, a)?;
        let (n, x, e) = (o.n, o.x, &o.e);
        let pair = o.pairs(|j| x[j], |k| e[k]);
        let psi1 = 2.0 / (a * a * a)
            + 2.0 / (a * a * n * n)
                * o.sum(|j| {
                    let r = (j + 1) as f64;
                    e[j] * (x[j] * (r - n - 1.0) - (2.0 * n - 2.0 * r + 1.0) / a)
                })
            - 2.0 / (a * a * n * n) * pair;
        let psi2 = 2.0 / (a * n * n)
            * o.sum(|j| {
                let r = (j + 1) as f64;
                e[j] * (x[j] * (r - n - 1.0) - (n - 2.0 * r + 1.0) / a)
            })
            - 2.0 / (a * n * n) * pair;
        let psi3 = 1.0 / (a * n * n) * o.sum(|j| e[j] * (2.0 * (j + 1) as f64 - 1.0));
        Ok(Self { psi1, psi2, psi3 })
    }

    pub fn psi2_at(&self, theta: f64) -> f64 {
        (self.psi1 * theta + self.psi2) * theta + self.psi3
    }

    /// Unconstrained minimizer `−Ψ₂ / (2Ψ₁)`.
    pub fn minimizer(&self) -> f64 {
        -self.psi2 / (2.0 * self.psi1)
    }
}

/// Exact `ψ²_{n,2}(ϑ)` for the exponential family, with its coefficients.
pub fn psi2_closed_exponential(
    theta: f64,
    sample: &Sample,
    a: f64,
) -> Result<(f64, ExponentialCoefficients)> {
    let c = ExponentialCoefficients::new(sample, a)?;
    Ok((c.psi2_at(theta), c))
}
