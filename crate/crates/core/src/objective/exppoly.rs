use serde::{Deserialize, Serialize};

use super::OrderedTerms;
use crate::error::Result;
use crate::sample::Sample;

/// `ψ²(ϑ₁, ϑ₃) = ϑ₁²Ψ̄₁ + ϑ₃²Ψ̄₂ + ϑ₁ϑ₃Ψ̄₃ + ϑ₁Ψ̄₄ + ϑ₃Ψ̄₅ + C` for the
/// exp-poly family.
///
/// `C = ∫ F_n(t)² e^{−at} dt` is the value at `ϑ = 0` and does not affect the
/// minimizer; it is kept so that [`ExpPolyCoefficients::psi2_at`] equals the
/// quadrature value rather than differing from it by a constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpPolyCoefficients {
    pub psi: [f64; 5],
    pub constant: f64,
}

impl ExpPolyCoefficients {
    pub fn new(sample: &Sample, a: f64) -> Result<Self> {
        let o = OrderedTerms::new(sample, a)?;
        let (n, x, e, om) = (o.n, o.x, &o.e, &o.one_minus_e);
        let a2 = a * a;
        let a3 = a2 * a;
        let nn = n * n;
        let x2 = |j: usize| x[j] * x[j];
        let x3 = |j: usize| x[j] * x[j] * x[j];

        // Pair sums shared by several coefficients.
        let xj_ek = o.pairs(|j| x[j], |k| e[k]);
        let xjej = o.pairs(|j| x[j] * e[j], |_| 1.0);
        let x3j_ek = o.pairs(x3, |k| e[k]);
        let x3jej = o.pairs(|j| x3(j) * e[j], |_| 1.0);
        let xj_x2kek = o.pairs(|j| x[j], |k| x2(k) * e[k]);
        let xjej_x2k = o.pairs(|j| x[j] * e[j], x2);

        let p1 = 2.0 / a3
            + o.sum(|j| {
                let r = (j + 1) as f64;
                e[j] * (-2.0 * x[j] / a2 - 2.0 / a3 * (2.0 * n - 2.0 * r + 1.0))
            }) / nn
            - 2.0 / nn / a2 * (xj_ek + xjej);

        let p2 = o.sum(|j| -18.0 * x3(j) * x2(j) * e[j] / a2 + 18.0 * x2(j) * x2(j) * om[j] / a3)
            / nn
            + 2.0 / nn
                * (-9.0 / a2
                    * (o.pairs(x3, |k| x2(k) * e[k]) + o.pairs(|j| x3(j) * e[j], x2))
                    + 18.0 / a3 * o.pairs(|j| x2(j) * om[j], x2));

        let p3 = o.sum(|j| -12.0 * x3(j) * e[j] / a2 + 12.0 * x2(j) * om[j] / a3) / nn
            + 2.0 / nn
                * (-3.0 / a2 * (xj_x2kek + xjej_x2k + x3j_ek + x3jej)
                    + 6.0 / a3
                        * (o.pairs(|j| om[j] * x2(j), |_| 1.0) + o.pairs(|j| om[j], x2)));

        let p4 = o.sum(|j| {
            let r = (j + 1) as f64;
            e[j] * (2.0 * x[j] / a + 2.0 * (n - 2.0 * r + 1.0) / a2)
        }) / nn
            + 2.0 / nn / a * (xj_ek + xjej);

        let p5 = 2.0 / nn
            * (3.0 / a * (x3j_ek + xjej_x2k)
                + 3.0 / a2 * (o.pairs(|j| e[j], x2) - o.pairs(|_| 1.0, |k| x2(k) * e[k])))
            + o.sum(|j| 6.0 * x3(j) * e[j] / a) / nn;

        let constant = o.sum(|j| {
            let m = (j + 1) as f64 / n;
            let next = if j + 1 < o.len() { e[j + 1] } else { 0.0 };
            m * m * (e[j] - next) / a
        });

        Ok(Self {
            psi: [p1, p2, p3, p4, p5],
            constant,
        })
    }

    pub fn psi2_at(&self, theta1: f64, theta3: f64) -> f64 {
        let [p1, p2, p3, p4, p5] = self.psi;
        theta1 * theta1 * p1
            + theta3 * theta3 * p2
            + theta1 * theta3 * p3
            + theta1 * p4
            + theta3 * p5
            + self.constant
    }

    pub fn gradient(&self, theta1: f64, theta3: f64) -> [f64; 2] {
        let [p1, p2, p3, p4, p5] = self.psi;
        [
            2.0 * p1 * theta1 + p3 * theta3 + p4,
            2.0 * p2 * theta3 + p3 * theta1 + p5,
        ]
    }

    /// `4Ψ̄₁Ψ̄₂ − Ψ̄₃²`, the determinant of the Hessian.
    pub fn determinant(&self) -> f64 {
        let [p1, p2, p3, _, _] = self.psi;
        4.0 * p1 * p2 - p3 * p3
    }

    /// Stationary point of the quadratic, or `None` when the Hessian is
    /// singular.
    pub fn stationary_point(&self) -> Option<[f64; 2]> {
        let [p1, p2, p3, p4, p5] = self.psi;
        let d = self.determinant();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some([(p3 * p5 - 2.0 * p2 * p4) / d, (p3 * p4 - 2.0 * p1 * p5) / d])
    }
}

/// Exact `ψ²_{n,2}(ϑ₁, ϑ₃)` for the exp-poly family, with its coefficients.
///
/// `ϑ₃ < 0` is not required here; the quadratic is defined everywhere.
pub fn psi2_closed_exppoly(
    theta1: f64,
    theta3: f64,
    sample: &Sample,
    a: f64,
) -> Result<(f64, ExpPolyCoefficients)> {
    let c = ExpPolyCoefficients::new(sample, a)?;
    Ok((c.psi2_at(theta1, theta3), c))
}
