//! The four parametric families on `(0, ∞)`.
//!
//! Each family is described by its score `u_ϑ = p′_ϑ / p_ϑ`, which is all
//! the distance objectives need; the normalizing constant never enters.
//!
//! | family | parameters | score `u_ϑ(x)` |
//! |---|---|---|
//! | exponential | rate `ϑ > 0` | `−ϑ` |
//! | Rayleigh | scale `ϑ > 0` | `1/x − x/ϑ²` |
//! | Burr XII | `c > 0`, `k > 0` | `(c−1)/x − c(k+1)x^{c−1}/(1+x^c)` |
//! | exponential-polynomial | `ϑ₁ ∈ ℝ`, `ϑ₃ < 0` | `ϑ₁ + 3ϑ₃x²` |
//!
//! The exponential-polynomial density is `∝ exp(ϑ₁x + ϑ₃x³)` with an
//! intractable normalizing constant.

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::golden_section_1d;
use crate::sample::Sample;
use crate::special::{logistic, softplus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Exponential,
    Rayleigh,
    Burr,
    ExpPoly,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Exponential,
        Family::Rayleigh,
        Family::Burr,
        Family::ExpPoly,
    ];

    pub fn dim(self) -> usize {
        match self {
            Family::Exponential | Family::Rayleigh => 1,
            Family::Burr | Family::ExpPoly => 2,
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Family::Exponential => &["theta"],
            Family::Rayleigh => &["theta"],
            Family::Burr => &["c", "k"],
            Family::ExpPoly => &["theta1", "theta3"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Rayleigh => "rayleigh",
            Family::Burr => "burr",
            Family::ExpPoly => "exp-poly",
        }
    }

    fn contains(self, v: &[f64]) -> bool {
        match self {
            Family::Exponential | Family::Rayleigh => v[0] > 0.0,
            Family::Burr => v[0] > 0.0 && v[1] > 0.0,
            Family::ExpPoly => v[1] < 0.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Ok(Family::Exponential),
            "rayleigh" => Ok(Family::Rayleigh),
            "burr" | "burr12" | "burr-xii" => Ok(Family::Burr),
            "exp-poly" | "exppoly" | "exponential-polynomial" => Ok(Family::ExpPoly),
            other => Err(format!(
                "unknown family '{other}' (expected exponential, rayleigh, burr or exp-poly)"
            )),
        }
    }
}

/// A family-tagged parameter point.
///
/// Points built with [`ParamVector::new`] (or the per-family constructors)
/// are checked against the parameter space. [`ParamVector::unconstrained`]
/// only requires finite coordinates; estimators that may legitimately land
/// outside the space (score matching) report such points and
/// [`ParamVector::in_param_space`] tells them apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamRepr", into = "ParamRepr")]
pub struct ParamVector {
    family: Family,
    values: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct ParamRepr {
    family: Family,
    values: Vec<f64>,
}

impl TryFrom<ParamRepr> for ParamVector {
    type Error = Error;

    fn try_from(r: ParamRepr) -> Result<Self> {
        ParamVector::unconstrained(r.family, &r.values)
    }
}

impl From<ParamVector> for ParamRepr {
    fn from(p: ParamVector) -> Self {
        ParamRepr {
            family: p.family,
            values: p.values().to_vec(),
        }
    }
}

impl ParamVector {
    pub fn new(family: Family, values: &[f64]) -> Result<Self> {
        let p = Self::unconstrained(family, values)?;
        if !p.in_param_space() {
            return Err(Error::OutsideParameterSpace {
                family,
                values: values.to_vec(),
            });
        }
        Ok(p)
    }

    pub fn unconstrained(family: Family, values: &[f64]) -> Result<Self> {
        if values.len() != family.dim() {
            return Err(Error::WrongDimension {
                family,
                expected: family.dim(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutsideParameterSpace {
                family,
                values: values.to_vec(),
            });
        }
        let mut packed = [0.0; 2];
        packed[..values.len()].copy_from_slice(values);
        Ok(Self {
            family,
            values: packed,
        })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(Family::Exponential, &[rate])
    }

    pub fn rayleigh(scale: f64) -> Result<Self> {
        Self::new(Family::Rayleigh, &[scale])
    }

    pub fn burr(c: f64, k: f64) -> Result<Self> {
        Self::new(Family::Burr, &[c, k])
    }

    pub fn exp_poly(theta1: f64, theta3: f64) -> Result<Self> {
        Self::new(Family::ExpPoly, &[theta1, theta3])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn values(&self) -> &[f64] {
        &self.values[..self.family.dim()]
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn in_param_space(&self) -> bool {
        self.family.contains(self.values())
    }

    fn ensure_in_space(&self) -> Result<()> {
        if self.in_param_space() {
            Ok(())
        } else {
            Err(Error::OutsideParameterSpace {
                family: self.family,
                values: self.values().to_vec(),
            })
        }
    }
}

/// `u_ϑ(x)` without argument checks. Callers guarantee `x > 0`.
#[inline]
pub(crate) fn score_raw(family: Family, v: &[f64], x: f64) -> f64 {
    match family {
        Family::Exponential => -v[0],
        Family::Rayleigh => 1.0 / x - x / (v[0] * v[0]),
        Family::Burr => {
            let (c, k) = (v[0], v[1]);
            (c - 1.0) / x - c * (k + 1.0) / x * logistic(c * x.ln())
        }
        Family::ExpPoly => v[0] + 3.0 * v[1] * x * x,
    }
}

fn check_point(x: f64, what: &'static str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            name: "x",
            value: x,
        })
    }
}

/// The score `p′_ϑ(x) / p_ϑ(x)`.
pub fn score(params: &ParamVector, x: f64) -> Result<f64> {
    check_point(x, "the score")?;
    params.ensure_in_space()?;
    Ok(score_raw(params.family, params.values(), x))
}

/// `ln p_ϑ(x)` up to an additive constant that does not depend on `x`.
pub fn log_density_kernel(params: &ParamVector, x: f64) -> Result<f64> {
    check_point(x, "the log-density")?;
    params.ensure_in_space()?;
    let v = params.values();
    Ok(match params.family {
        Family::Exponential => -v[0] * x,
        Family::Rayleigh => x.ln() - x * x / (2.0 * v[0] * v[0]),
        Family::Burr => (v[0] - 1.0) * x.ln() - (v[1] + 1.0) * softplus(v[0] * x.ln()),
        Family::ExpPoly => v[0] * x + v[1] * x * x * x,
    })
}

/// Distribution function `P_ϑ(x)`. Not available for the
/// exponential-polynomial family.
pub fn cdf(params: &ParamVector, x: f64) -> Result<f64> {
    check_point(x, "the distribution function")?;
    params.ensure_in_space()?;
    let v = params.values();
    match params.family {
        Family::Exponential => Ok(-(-v[0] * x).exp_m1()),
        Family::Rayleigh => Ok(-(-x * x / (2.0 * v[0] * v[0])).exp_m1()),
        Family::Burr => Ok(-(-v[1] * softplus(v[0] * x.ln())).exp_m1()),
        Family::ExpPoly => Err(Error::UnsupportedFamily {
            family: Family::ExpPoly,
            operation: "the distribution function",
        }),
    }
}

/// Inverse distribution function `P_ϑ⁻¹(u)` for `u ∈ (0, 1)`.
pub fn quantile(params: &ParamVector, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain {
            what: "the quantile function",
            name: "u",
            value: u,
        });
    }
    params.ensure_in_space()?;
    let v = params.values();
    // -ln(1 - u)
    let tail = -(-u).ln_1p();
    match params.family {
        Family::Exponential => Ok(tail / v[0]),
        Family::Rayleigh => Ok(v[0] * (2.0 * tail).sqrt()),
        Family::Burr => Ok(((tail / v[1]).exp_m1().ln() / v[0]).exp()),
        Family::ExpPoly => Err(Error::UnsupportedFamily {
            family: Family::ExpPoly,
            operation: "the quantile function",
        }),
    }
}

/// Draws `n` i.i.d. observations from `p_ϑ`.
///
/// Exponential, Rayleigh and Burr use inversion of an open-interval uniform;
/// the exponential-polynomial family uses [`ExpPolyRejection`].
pub fn sample<R: Rng + ?Sized>(params: &ParamVector, n: usize, rng: &mut R) -> Result<Sample> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    params.ensure_in_space()?;
    let values = match params.family {
        Family::ExpPoly => {
            let v = params.values();
            let sampler = ExpPolyRejection::new(v[0], v[1])?;
            (0..n).map(|_| sampler.draw(rng)).collect()
        }
        _ => (0..n)
            .map(|_| quantile(params, rng.sample(Open01)))
            .collect::<Result<Vec<f64>>>()?,
    };
    Sample::new(values)
}

/// Exact rejection sampler for `exp(ϑ₁x + ϑ₃x³)` on `(0, ∞)`.
///
/// The proposal is `Exp(λ)`. For a given `λ` the log ratio of target to
/// proposal is `h(x) = (ϑ₁ + λ)x + ϑ₃x³ − ln λ`, maximized in closed form at
/// `x* = √((ϑ₁+λ)/(−3ϑ₃))`. The rate `λ` itself maximizes the acceptance
/// probability `∝ λ·exp(−max h)`, a concave problem in `ln λ` solved by
/// golden-section search.
#[derive(Debug, Clone, Copy)]
pub struct ExpPolyRejection {
    theta1: f64,
    theta3: f64,
    rate: f64,
    log_bound: f64,
}

impl ExpPolyRejection {
    pub fn new(theta1: f64, theta3: f64) -> Result<Self> {
        if !(theta1.is_finite() && theta3.is_finite() && theta3 < 0.0) {
            return Err(Error::OutsideParameterSpace {
                family: Family::ExpPoly,
                values: vec![theta1, theta3],
            });
        }
        let peak = |rate: f64| {
            let slope = theta1 + rate;
            if slope <= 0.0 {
                0.0
            } else {
                2.0 / 3.0 * slope * (slope / (-3.0 * theta3)).sqrt()
            }
        };
        let scale = theta1.abs() + (-3.0 * theta3).cbrt();
        let lo = (scale * 1e-6).ln();
        let hi = (scale * 1e3).ln();
        let best = golden_section_1d(|log_rate| peak(log_rate.exp()) - log_rate, (lo, hi), 1e-10);
        let rate = best.point[0].exp();
        Ok(Self {
            theta1,
            theta3,
            rate,
            log_bound: peak(rate),
        })
    }

    /// Rate of the exponential proposal.
    pub fn proposal_rate(&self) -> f64 {
        self.rate
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.sample(Open01);
            let x = -u.ln() / self.rate;
            let log_ratio = (self.theta1 + self.rate) * x + self.theta3 * x * x * x;
            let v: f64 = rng.sample(Open01);
            if v.ln() <= log_ratio - self.log_bound {
                return x;
            }
        }
    }
}
