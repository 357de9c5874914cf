//! Monte Carlo bias and MSE of estimators.
//!
//! A cell is one `(ϑ₀, n, estimator)` combination. Replication `k` draws its
//! sample from [`replication_stream`]`(seed, k, Sample)` and any estimator
//! randomness from the matching `Estimator` stream, so results do not depend
//! on how replications are scheduled. Estimators evaluated together with
//! [`run_cells`] see the same samples.
//!
//! Replications whose fit fails, does not converge or returns a non-finite
//! coordinate are excluded from bias and MSE and counted in
//! [`McSummary::failure_count`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    fit_am_rayleigh, fit_cvm, fit_mle_burr, fit_mle_exponential, fit_mle_rayleigh,
    fit_moment_rayleigh, fit_mse_exponential, fit_nce_exppoly, fit_score_matching_exppoly,
    fit_stein_burr, fit_stein_exponential, fit_stein_exppoly, fit_stein_rayleigh, EstimateReport,
    NceConfig,
};
use crate::models::{sample as draw, Family, ParamVector};
use crate::objective::check_tuning;
use crate::rng::{mix_seed, replication_stream, StreamPurpose, StreamRng};
use crate::sample::Sample;
use crate::summation::pairwise_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorId {
    /// Stein-type minimum `L²` distance with weight `e^{−at}`.
    Stein,
    /// Maximum likelihood.
    Ml,
    /// Minimum-MSE multiple of ML (exponential).
    Mse,
    /// Minimum Cramér–von Mises distance.
    Cvm,
    /// Moment estimator (Rayleigh).
    Mom,
    /// `√(X̄ / mean(1/X))` (Rayleigh).
    Am,
    /// Score matching (exp-poly).
    Sm,
    /// Noise-contrastive estimation (exp-poly).
    Nce,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 8] = [
        EstimatorId::Stein,
        EstimatorId::Ml,
        EstimatorId::Mse,
        EstimatorId::Cvm,
        EstimatorId::Mom,
        EstimatorId::Am,
        EstimatorId::Sm,
        EstimatorId::Nce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorId::Stein => "stein",
            EstimatorId::Ml => "ml",
            EstimatorId::Mse => "mse",
            EstimatorId::Cvm => "cvm",
            EstimatorId::Mom => "mom",
            EstimatorId::Am => "am",
            EstimatorId::Sm => "sm",
            EstimatorId::Nce => "nce",
        }
    }

    pub fn applies_to(self, family: Family) -> bool {
        use EstimatorId::*;
        use Family::*;
        matches!(
            (self, family),
            (Stein, _)
                | (Ml, Exponential | Rayleigh | Burr)
                | (Mse, Exponential)
                | (Cvm, Exponential | Rayleigh | Burr)
                | (Mom | Am, Rayleigh)
                | (Sm | Nce, ExpPoly)
        )
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        EstimatorId::ALL
            .into_iter()
            .find(|id| id.name() == lower)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown estimator `{s}`")))
    }
}

/// An estimator together with its tuning parameter, labelled `stein(0.25)`,
/// `ml`, ...
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSpec {
    pub id: EstimatorId,
    /// Weight parameter `a` of the Stein estimator; `None` for the others.
    pub tuning: Option<f64>,
}

impl EstimatorSpec {
    pub fn stein(a: f64) -> Self {
        Self {
            id: EstimatorId::Stein,
            tuning: Some(a),
        }
    }

    pub fn plain(id: EstimatorId) -> Self {
        Self { id, tuning: None }
    }

    pub fn label(&self) -> String {
        match self.tuning {
            Some(a) => format!("{}({a})", self.id),
            None => self.id.to_string(),
        }
    }

    /// Checks that the estimator exists for `family` and that the tuning
    /// parameter is present exactly when needed.
    pub fn validate(&self, family: Family) -> Result<()> {
        if !self.id.applies_to(family) {
            return Err(Error::EstimatorNotApplicable {
                estimator: self.id.name(),
                family,
            });
        }
        match (self.id, self.tuning) {
            (EstimatorId::Stein, Some(a)) => check_tuning(a),
            (EstimatorId::Stein, None) => Err(Error::InvalidConfig(
                "the stein estimator needs a weight parameter, e.g. stein(1)".into(),
            )),
            (_, Some(_)) => Err(Error::InvalidConfig(format!(
                "estimator `{}` takes no tuning parameter",
                self.id
            ))),
            (_, None) => Ok(()),
        }
    }

    /// Fits `sample` under `family`. `rng` feeds estimators that need their
    /// own randomness (noise-contrastive estimation).
    pub fn fit(
        &self,
        family: Family,
        sample: &Sample,
        rng: &mut StreamRng,
    ) -> Result<EstimateReport> {
        self.validate(family)?;
        let a = self.tuning.unwrap_or(f64::NAN);
        match (self.id, family) {
            (EstimatorId::Stein, Family::Exponential) => fit_stein_exponential(sample, a),
            (EstimatorId::Stein, Family::Rayleigh) => fit_stein_rayleigh(sample, a),
            (EstimatorId::Stein, Family::Burr) => fit_stein_burr(sample, a),
            (EstimatorId::Stein, Family::ExpPoly) => fit_stein_exppoly(sample, a),
            (EstimatorId::Ml, Family::Exponential) => fit_mle_exponential(sample),
            (EstimatorId::Ml, Family::Rayleigh) => fit_mle_rayleigh(sample),
            (EstimatorId::Ml, Family::Burr) => fit_mle_burr(sample),
            (EstimatorId::Mse, _) => fit_mse_exponential(sample),
            (EstimatorId::Cvm, _) => fit_cvm(family, sample, None),
            (EstimatorId::Mom, _) => fit_moment_rayleigh(sample),
            (EstimatorId::Am, _) => fit_am_rayleigh(sample),
            (EstimatorId::Sm, _) => fit_score_matching_exppoly(sample),
            (EstimatorId::Nce, _) => fit_nce_exppoly(sample, &NceConfig::default(), rng),
            (id, family) => Err(Error::EstimatorNotApplicable {
                estimator: id.name(),
                family,
            }),
        }
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for EstimatorSpec {
    type Err = Error;

    /// Parses `name` or `name(a)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| {
                    Error::InvalidConfig(format!("missing `)` in estimator `{s}`"))
                })?;
                let a: f64 = inner.trim().parse().map_err(|_| {
                    Error::InvalidConfig(format!("bad tuning value `{inner}` in `{s}`"))
                })?;
                Ok(Self {
                    id: name.parse()?,
                    tuning: Some(a),
                })
            }
            None => Ok(Self::plain(s.parse()?)),
        }
    }
}

/// Bias and MSE of one estimator at one `(ϑ₀, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSummary {
    pub family: Family,
    pub theta0: ParamVector,
    pub n: usize,
    pub estimator: EstimatorId,
    pub tuning: Option<f64>,
    /// Number of replications `D`, failures included.
    pub reps: usize,
    /// Mean of `ϑ̂ − ϑ₀` per coordinate over usable replications.
    pub bias: Vec<f64>,
    /// Mean of `(ϑ̂ − ϑ₀)²` per coordinate over usable replications.
    pub mse: Vec<f64>,
    pub failure_count: usize,
    pub seed: u64,
}

impl McSummary {
    pub fn spec(&self) -> EstimatorSpec {
        EstimatorSpec {
            id: self.estimator,
            tuning: self.tuning,
        }
    }
}

/// A cell together with the per-replication errors `ϑ̂_k − ϑ₀` (`None` for
/// failed replications).
#[derive(Debug, Clone, PartialEq)]
pub struct CellRun {
    pub summary: McSummary,
    pub errors: Vec<Option<Vec<f64>>>,
}

impl CellRun {
    /// Usable per-replication errors, in replication order.
    pub fn usable_errors(&self) -> Vec<Vec<f64>> {
        self.errors.iter().flatten().cloned().collect()
    }

    /// Standard error of each bias coordinate.
    pub fn bias_standard_error(&self) -> Vec<f64> {
        mc_standard_error(&self.usable_errors(), self.summary.theta0.dim())
    }

    /// Standard error of each MSE coordinate (the same formula applied to
    /// squared errors).
    pub fn mse_standard_error(&self) -> Vec<f64> {
        let squared: Vec<Vec<f64>> = self
            .usable_errors()
            .into_iter()
            .map(|e| e.into_iter().map(|v| v * v).collect())
            .collect();
        mc_standard_error(&squared, self.summary.theta0.dim())
    }
}

/// Per coordinate, the sample standard deviation (divisor `D − 1`) of
/// `errors` divided by `√D`. `NaN` when fewer than two rows are given.
pub fn mc_standard_error(errors: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let d = errors.len();
    (0..dim)
        .map(|i| {
            if d < 2 {
                return f64::NAN;
            }
            let column: Vec<f64> = errors.iter().map(|e| e[i]).collect();
            let mean = pairwise_sum(&column) / d as f64;
            let centered: Vec<f64> = column.iter().map(|v| (v - mean) * (v - mean)).collect();
            (pairwise_sum(&centered) / (d - 1) as f64).sqrt() / (d as f64).sqrt()
        })
        .collect()
}

/// Seed for the `(ϑ₀, n)` row of an experiment seeded with `seed`.
///
/// Derived from the cell's content rather than its position, so adding rows
/// to an experiment leaves the samples of the existing rows unchanged.
pub fn row_seed(seed: u64, theta0: &ParamVector, n: usize) -> u64 {
    let mut s = mix_seed(seed, theta0.family() as u64);
    s = mix_seed(s, n as u64);
    for v in theta0.values() {
        s = mix_seed(s, v.to_bits());
    }
    s
}

/// Whether replications run on the rayon pool or on the calling thread.
/// Both give bit-identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Serial,
}

/// Bias and MSE of `estimator` at `(theta0, n)` over `reps` replications.
pub fn run_cell(
    theta0: &ParamVector,
    n: usize,
    estimator: EstimatorSpec,
    reps: usize,
    seed: u64,
) -> Result<McSummary> {
    let mut runs = run_cells(theta0, n, &[estimator], reps, seed, Execution::Parallel)?;
    Ok(runs.remove(0).summary)
}

/// Runs several estimators on the same `reps` samples.
pub fn run_cells(
    theta0: &ParamVector,
    n: usize,
    estimators: &[EstimatorSpec],
    reps: usize,
    seed: u64,
    execution: Execution,
) -> Result<Vec<CellRun>> {
    let family = theta0.family();
    for spec in estimators {
        spec.validate(family)?;
    }
    let fits = replicate(theta0, n, reps, seed, execution, |sample, rng| {
        estimators
            .iter()
            .map(|spec| spec.fit(family, sample, rng))
            .collect()
    })?;
    Ok(estimators
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let column = fits.iter().map(|row| row[i].as_ref().ok());
            aggregate(theta0, n, *spec, reps, seed, column)
        })
        .collect())
}

/// Like [`run_cells`] for a single user-supplied estimator, labelled `spec`.
pub fn run_cell_with<F>(
    theta0: &ParamVector,
    n: usize,
    spec: EstimatorSpec,
    reps: usize,
    seed: u64,
    execution: Execution,
    fit: F,
) -> Result<CellRun>
where
    F: Fn(&Sample, &mut StreamRng) -> Result<EstimateReport> + Sync,
{
    let fits = replicate(theta0, n, reps, seed, execution, |s, rng| vec![fit(s, rng)])?;
    let column = fits.iter().map(|row| row[0].as_ref().ok());
    Ok(aggregate(theta0, n, spec, reps, seed, column))
}

fn check_cell(theta0: &ParamVector, n: usize, reps: usize) -> Result<()> {
    if !theta0.in_param_space() {
        return Err(Error::OutsideParameterSpace {
            family: theta0.family(),
            values: theta0.values().to_vec(),
        });
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if reps == 0 {
        return Err(Error::InvalidConfig("at least one replication is needed".into()));
    }
    Ok(())
}

type Fits = Vec<Result<EstimateReport>>;

fn replicate<F>(
    theta0: &ParamVector,
    n: usize,
    reps: usize,
    seed: u64,
    execution: Execution,
    fit: F,
) -> Result<Vec<Fits>>
where
    F: Fn(&Sample, &mut StreamRng) -> Fits + Sync,
{
    check_cell(theta0, n, reps)?;
    let one = |k: usize| -> Fits {
        let mut sample_rng = replication_stream(seed, k as u64, StreamPurpose::Sample);
        let mut est_rng = replication_stream(seed, k as u64, StreamPurpose::Estimator);
        match draw(theta0, n, &mut sample_rng) {
            Ok(sample) => fit(&sample, &mut est_rng),
            Err(e) => vec![Err(e)],
        }
    };
    Ok(match execution {
        Execution::Parallel => (0..reps).into_par_iter().map(one).collect(),
        Execution::Serial => (0..reps).map(one).collect(),
    })
}

fn aggregate<'a>(
    theta0: &ParamVector,
    n: usize,
    spec: EstimatorSpec,
    reps: usize,
    seed: u64,
    fits: impl Iterator<Item = Option<&'a EstimateReport>>,
) -> CellRun {
    let truth = theta0.values();
    let errors: Vec<Option<Vec<f64>>> = fits
        .map(|fit| {
            fit.filter(|r| r.is_usable())
                .map(|r| r.params.values().iter().zip(truth).map(|(e, t)| e - t).collect())
        })
        .collect();
    let usable: Vec<&Vec<f64>> = errors.iter().flatten().collect();
    let m = usable.len() as f64;
    let moment = |power: i32| -> Vec<f64> {
        (0..truth.len())
            .map(|i| {
                let col: Vec<f64> = usable.iter().map(|e| e[i].powi(power)).collect();
                pairwise_sum(&col) / m
            })
            .collect()
    };
    let summary = McSummary {
        family: theta0.family(),
        theta0: *theta0,
        n,
        estimator: spec.id,
        tuning: spec.tuning,
        reps,
        bias: moment(1),
        mse: moment(2),
        failure_count: reps - usable.len(),
        seed,
    };
    CellRun { summary, errors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in ["stein(0.25)", "ml", "cvm", "stein(3)", "nce"] {
            let spec: EstimatorSpec = s.parse().unwrap();
            assert_eq!(spec.label(), s);
        }
        assert!("stein(".parse::<EstimatorSpec>().is_err());
        assert!("stein(x)".parse::<EstimatorSpec>().is_err());
        assert!("foo".parse::<EstimatorSpec>().is_err());
    }

    #[test]
    fn validation() {
        assert!(EstimatorSpec::stein(1.0).validate(Family::Burr).is_ok());
        assert!(EstimatorSpec::stein(0.0).validate(Family::Burr).is_err());
        assert!(EstimatorSpec::plain(EstimatorId::Stein)
            .validate(Family::Burr)
            .is_err());
        assert!(EstimatorSpec::plain(EstimatorId::Mse)
            .validate(Family::Rayleigh)
            .is_err());
        let tuned_ml = EstimatorSpec {
            id: EstimatorId::Ml,
            tuning: Some(1.0),
        };
        assert!(tuned_ml.validate(Family::Exponential).is_err());
    }

    #[test]
    fn perfect_estimator_has_zero_bias_and_mse() {
        let theta0 = ParamVector::exponential(0.5).unwrap();
        let run = run_cell_with(
            &theta0,
            10,
            EstimatorSpec::plain(EstimatorId::Ml),
            50,
            1,
            Execution::Parallel,
            |_, _| Ok(EstimateReport::explicit(theta0)),
        )
        .unwrap();
        assert_eq!(run.summary.bias, vec![0.0]);
        assert_eq!(run.summary.mse, vec![0.0]);
        assert_eq!(run.bias_standard_error(), vec![0.0]);
    }

    #[test]
    fn standard_error_examples() {
        assert_eq!(mc_standard_error(&[vec![2.0], vec![2.0], vec![2.0]], 1), vec![0.0]);
        let se = mc_standard_error(&[vec![-1.0], vec![1.0]], 1);
        assert!((se[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn failures_are_counted_not_averaged() {
        let theta0 = ParamVector::exponential(1.0).unwrap();
        let run = run_cell_with(
            &theta0,
            5,
            EstimatorSpec::plain(EstimatorId::Ml),
            10,
            3,
            Execution::Serial,
            |s, _| {
                if s.max() > 2.0 {
                    Err(Error::DegenerateSample("test"))
                } else {
                    fit_mle_exponential(s)
                }
            },
        )
        .unwrap();
        let failed = run.errors.iter().filter(|e| e.is_none()).count();
        assert_eq!(run.summary.failure_count, failed);
        assert!(failed > 0 && failed < 10);
    }

    #[test]
    fn row_seeds_depend_on_content() {
        let a = ParamVector::exponential(0.5).unwrap();
        let b = ParamVector::exponential(2.0).unwrap();
        let r = ParamVector::rayleigh(0.5).unwrap();
        assert_eq!(row_seed(1, &a, 10), row_seed(1, &a, 10));
        assert_ne!(row_seed(1, &a, 10), row_seed(1, &a, 25));
        assert_ne!(row_seed(1, &a, 10), row_seed(1, &b, 10));
        assert_ne!(row_seed(1, &a, 10), row_seed(1, &r, 10));
        assert_ne!(row_seed(1, &a, 10), row_seed(2, &a, 10));
    }

    #[test]
    fn rejects_bad_cells() {
        let theta0 = ParamVector::exponential(1.0).unwrap();
        let ml = EstimatorSpec::plain(EstimatorId::Ml);
        assert!(run_cell(&theta0, 0, ml, 10, 1).is_err());
        assert!(run_cell(&theta0, 10, ml, 0, 1).is_err());
        assert!(run_cell(&theta0, 10, EstimatorSpec::plain(EstimatorId::Sm), 10, 1).is_err());
    }
}
