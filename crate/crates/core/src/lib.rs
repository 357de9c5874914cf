//! Minimum-distance parameter estimation from a Stein-type characterization.
//!
//! For a density `p_ϑ` on `(0, ∞)` with score `u_ϑ = p′_ϑ / p_ϑ`, the
//! distribution function satisfies
//!
//! ```text
//! F(t) = E[ −u_ϑ(X) · min{X, t} ]   for all t > 0,
//! ```
//!
//! and this identity characterizes the law. Replacing both sides by their
//! empirical versions gives a contrast `η_n(t, ϑ)`; its weighted `L^q` norm
//! `ψ_{n,q}(ϑ)` is minimized over `ϑ`. The score does not involve the
//! normalizing constant, so the method also applies to unnormalized models.
//!
//! ```
//! use stein_mde::estimators::{fit_mle_exponential, fit_stein_exponential};
//! use stein_mde::models::{sample, ParamVector};
//! use stein_mde::rng::seeded;
//!
//! let truth = ParamVector::exponential(2.0)?;
//! let data = sample(&truth, 500, &mut seeded(7))?;
//!
//! let stein = fit_stein_exponential(&data, 1.0)?;
//! let ml = fit_mle_exponential(&data)?;
//! assert!((stein.params.values()[0] - 2.0).abs() < 0.3);
//! assert!((ml.params.values()[0] - 2.0).abs() < 0.3);
//! # Ok::<(), stein_mde::error::Error>(())
//! ```
//!
//! Modules:
//!
//! * [`models`]: the exponential, Rayleigh, Burr XII and exp-poly families,
//!   their scores, distribution functions and samplers.
//! * [`objective`]: `η_n`, `ψ_{n,q}` by quadrature, the `q = 2` closed forms
//!   and the `a → ∞` limit.
//! * [`estimators`]: Stein estimators and the competitors (ML, moment-type,
//!   Cramér–von Mises, score matching, noise-contrastive estimation).
//! * [`optim`]: the root finder and minimizers behind the numerical fits.
//! * [`montecarlo`]: replicated bias/MSE studies with reproducible streams.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimators;
pub mod models;
pub mod montecarlo;
pub mod objective;
pub mod optim;
pub mod quadrature;
pub mod rng;
pub mod sample;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use estimators::EstimateReport;
pub use models::{Family, ParamVector};
pub use sample::Sample;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/objective.md")]
    mod objective {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    mod estimators {}
    #[doc = include_str!("../../../book/src/montecarlo.md")]
    mod montecarlo {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
