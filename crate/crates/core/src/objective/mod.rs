//! Distance objectives.
//!
//! For a sample `X_1, …, X_n` and a parameter `ϑ`, the empirical contrast
//!
//! ```text
//! η_n(t, ϑ) = −(1/n) Σ_j u_ϑ(X_j)·min{X_j, t} − (1/n) Σ_j 1{X_j ≤ t}
//! ```
//!
//! vanishes identically in `t` (in expectation) exactly at the true
//! parameter. The estimators minimize its weighted `L^q` norm
//!
//! ```text
//! ψ_{n,q}(ϑ) = ( ∫₀^∞ |η_n(t, ϑ)|^q w(t) dt )^{1/q},   w(t) = e^{−a t}.
//! ```
//!
//! [`psi_quadrature`] evaluates the norm numerically for any `q ≥ 1`. For
//! `q = 2` each family has an exact expression in the order statistics
//! ([`psi2_closed_exponential`] and friends), and [`limit_objective`] gives
//! the `a → ∞` limit of `a^{q+1} ψ^q`.

mod burr;
mod exponential;
mod exppoly;
mod rayleigh;

#[cfg(test)]
mod literal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{score, ParamVector};
use crate::quadrature::integrate;
use crate::sample::Sample;
use crate::special::gamma;
use crate::summation::{compensated_sum, CompensatedSum};

pub(crate) use burr::BurrObjective;
pub use burr::psi2_closed_burr;
pub use exponential::{psi2_closed_exponential, ExponentialCoefficients};
pub use exppoly::{psi2_closed_exppoly, ExpPolyCoefficients};
pub use rayleigh::{psi2_closed_rayleigh, RayleighCoefficients};

/// Relative tolerance of the quadrature path.
pub const QUADRATURE_REL_TOL: f64 = 1e-9;
/// Absolute floor of the quadrature path.
pub const QUADRATURE_ABS_TOL: f64 = 1e-14;

/// Exponent `q ≥ 1` and weight decay `a > 0` of the `L^q` distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LqWeightConfig {
    q: f64,
    a: f64,
}

impl LqWeightConfig {
    pub fn new(q: f64, a: f64) -> Result<Self> {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::InvalidConfig(format!("exponent q = {q} must be ≥ 1")));
        }
        check_tuning(a)?;
        Ok(Self { q, a })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn weight(&self) -> ExponentialWeight {
        ExponentialWeight { a: self.a }
    }
}

pub(crate) fn check_tuning(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "weight parameter a = {a} must be positive and finite"
        )))
    }
}

/// A positive integrable weight on `(0, ∞)` whose tail integral is known.
pub trait Weight {
    fn value(&self, t: f64) -> f64;
    /// `∫_from^∞ w(t) dt`.
    fn tail_integral(&self, from: f64) -> f64;
    /// Length over which the weight falls by a constant factor, if it has
    /// one. Quadrature adds breakpoints on this scale so that a fast-decaying
    /// weight is not sampled only where it has already vanished.
    fn decay_length(&self) -> Option<f64> {
        None
    }
}

/// `w(t) = e^{−a t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialWeight {
    pub a: f64,
}

impl Weight for ExponentialWeight {
    fn value(&self, t: f64) -> f64 {
        (-self.a * t).exp()
    }

    fn tail_integral(&self, from: f64) -> f64 {
        (-self.a * from).exp() / self.a
    }

    fn decay_length(&self) -> Option<f64> {
        Some(1.0 / self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveMethod {
    ClosedForm,
    Quadrature,
    LimitA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveValue {
    pub value: f64,
    pub method: ObjectiveMethod,
}

/// `η_n(t, ϑ)` evaluated directly from its definition.
pub fn eta_n(t: f64, params: &ParamVector, sample: &Sample) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain {
            what: "η_n",
            name: "t",
            value: t,
        });
    }
    let n = sample.len() as f64;
    let mut stein = CompensatedSum::new();
    let mut count = 0usize;
    for &x in sample.sorted() {
        stein.add(score(params, x)? * x.min(t));
        if x <= t {
            count += 1;
        }
    }
    Ok(-stein.value() / n - count as f64 / n)
}

/// `η_n(·, ϑ)` as the piecewise-linear function it is.
///
/// Piece `m` (`m = 0, …, n`) covers `[X_(m), X_(m+1))` with `X_(0) = 0` and
/// `X_(n+1) = ∞`, on which `η_n(t) = intercept[m] + slope[m]·t`.
#[derive(Debug, Clone)]
pub(crate) struct EtaPieces {
    pub knots: Vec<f64>,
    pub intercept: Vec<f64>,
    pub slope: Vec<f64>,
}

impl EtaPieces {
    pub fn new(params: &ParamVector, sample: &Sample) -> Result<Self> {
        let xs = sample.sorted();
        let n = xs.len();
        let nf = n as f64;
        let u: Vec<f64> = xs
            .iter()
            .map(|&x| score(params, x))
            .collect::<Result<_>>()?;

        let mut suffix = vec![0.0; n + 1];
        let mut acc = CompensatedSum::new();
        for j in (0..n).rev() {
            acc.add(u[j]);
            suffix[j] = acc.value();
        }

        let mut intercept = Vec::with_capacity(n + 1);
        let mut slope = Vec::with_capacity(n + 1);
        let mut prefix = CompensatedSum::new();
        for m in 0..=n {
            intercept.push(-prefix.value() / nf - m as f64 / nf);
            slope.push(-suffix[m] / nf);
            if m < n {
                prefix.add(u[m] * xs[m]);
            }
        }
        Ok(Self {
            knots: xs.to_vec(),
            intercept,
            slope,
        })
    }

    #[cfg(test)]
    pub fn eval(&self, t: f64) -> f64 {
        let m = self.knots.partition_point(|&x| x <= t);
        self.intercept[m] + self.slope[m] * t
    }
}

/// `ψ_{n,q}(ϑ)` by adaptive quadrature with the exponential weight of `cfg`.
pub fn psi_quadrature(
    params: &ParamVector,
    sample: &Sample,
    cfg: &LqWeightConfig,
) -> Result<ObjectiveValue> {
    psi_quadrature_weighted(params, sample, cfg.q(), &cfg.weight())
}

/// `(∫₀^∞ |η_n(t, ϑ)|^q w(t) dt)^{1/q}` for an arbitrary weight.
///
/// `η_n` is linear between consecutive order statistics, so each piece is
/// integrated separately (split again where the linear part crosses zero,
/// since `|·|^q` has a kink there) and the constant tail beyond `X_(n)` is
/// integrated with [`Weight::tail_integral`].
pub fn psi_quadrature_weighted<W: Weight>(
    params: &ParamVector,
    sample: &Sample,
    q: f64,
    weight: &W,
) -> Result<ObjectiveValue> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidConfig(format!("exponent q = {q} must be ≥ 1")));
    }
    let pieces = EtaPieces::new(params, sample)?;
    let n = pieces.knots.len();
    let abs_tol = QUADRATURE_ABS_TOL / (n as f64 + 1.0);
    let mut total = CompensatedSum::new();
    let mut lo = 0.0;
    for m in 0..n {
        let hi = pieces.knots[m];
        let (c0, c1) = (pieces.intercept[m], pieces.slope[m]);
        let integrand = |t: f64| (c0 + c1 * t).abs().powf(q) * weight.value(t);
        let mut cuts = vec![lo];
        if c1 != 0.0 {
            let root = -c0 / c1;
            if root > lo && root < hi {
                cuts.push(root);
            }
        }
        cuts.push(hi);
        if let Some(len) = weight.decay_length() {
            cuts = refine(&cuts, len);
        }
        for w in cuts.windows(2) {
            let part = integrate(integrand, w[0], w[1], QUADRATURE_REL_TOL, abs_tol)?;
            total.add(part.value);
        }
        lo = hi;
    }
    total.add(pieces.intercept[n].abs().powf(q) * weight.tail_integral(lo));
    Ok(ObjectiveValue {
        value: total.value().max(0.0).powf(1.0 / q),
        method: ObjectiveMethod::Quadrature,
    })
}

/// Adds breakpoints `u + len·4^k` inside each window `[u, v]`.
fn refine(cuts: &[f64], len: f64) -> Vec<f64> {
    let mut out = vec![cuts[0]];
    for w in cuts.windows(2) {
        let mut step = len;
        for _ in 0..8 {
            let t = w[0] + step;
            if t >= w[1] {
                break;
            }
            out.push(t);
            step *= 4.0;
        }
        out.push(w[1]);
    }
    out
}

/// `lim_{a→∞} a^{q+1} ψ_{n,q}(ϑ, a)^q = Γ(q+1)·|(1/n) Σ_j u_ϑ(X_j)|^q`.
pub fn limit_objective(params: &ParamVector, sample: &Sample, q: f64) -> Result<ObjectiveValue> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidConfig(format!("exponent q = {q} must be ≥ 1")));
    }
    let scores: Vec<f64> = sample
        .sorted()
        .iter()
        .map(|&x| score(params, x))
        .collect::<Result<_>>()?;
    let mean = compensated_sum(scores) / sample.len() as f64;
    Ok(ObjectiveValue {
        value: gamma(q + 1.0) * mean.abs().powf(q),
        method: ObjectiveMethod::LimitA,
    })
}

/// Per-observation quantities shared by the closed forms.
pub(crate) struct OrderedTerms<'a> {
    pub x: &'a [f64],
    /// `e^{−a X_(j)}`
    pub e: Vec<f64>,
    /// `1 − e^{−a X_(j)}`, computed without cancellation.
    pub one_minus_e: Vec<f64>,
    pub n: f64,
}

impl<'a> OrderedTerms<'a> {
    pub fn new(sample: &'a Sample, a: f64) -> Result<Self> {
        check_tuning(a)?;
        let x = sample.sorted();
        Ok(Self {
            x,
            e: x.iter().map(|&v| (-a * v).exp()).collect(),
            one_minus_e: x.iter().map(|&v| -(-a * v).exp_m1()).collect(),
            n: x.len() as f64,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// `Σ_j h(j)` over 0-based indices.
    pub fn sum<H: Fn(usize) -> f64>(&self, h: H) -> f64 {
        compensated_sum((0..self.len()).map(h))
    }

    /// `Σ_{j<k} f(j)·g(k)` over 0-based indices.
    pub fn pairs<F: Fn(usize) -> f64, G: Fn(usize) -> f64>(&self, f: F, g: G) -> f64 {
        crate::summation::ordered_pair_sum(self.len(), f, g)
    }
}
