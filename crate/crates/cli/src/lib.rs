//! Command-line front end for the `stein-mde` estimators.
//!
//! The binary is a thin wrapper over [`run_experiment`], [`fit_file`] and the
//! renderers in [`report`]; everything is exposed here so the integration
//! tests can drive it without spawning processes.

pub mod config;
pub mod data;
pub mod error;
pub mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use stein_mde::montecarlo::{row_seed, run_cells, EstimatorSpec, Execution};
use stein_mde::rng::{replication_stream, StreamPurpose};
use stein_mde::{Family, Sample};

pub use config::{ExperimentConfig, OutputFormat};
pub use error::CliError;
pub use report::{ExperimentResults, Metric};

/// Runs every `(ϑ₀, n, estimator)` cell of `cfg`. Rows are seeded from their
/// content, and estimators within a row share their samples.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResults, CliError> {
    let mut cells = Vec::new();
    for theta0 in &cfg.theta0 {
        for &n in &cfg.n {
            let seed = row_seed(cfg.seed, theta0, n);
            let runs = run_cells(theta0, n, &cfg.estimators, cfg.reps, seed, Execution::Parallel)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            cells.extend(runs.into_iter().map(|r| r.summary));
        }
    }
    Ok(ExperimentResults::new(cfg, cells))
}

/// One rendered artifact: a file name and its contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Renders `results` in `format`. CSV gives three files (wide bias and MSE
/// tables plus the long cell table); Markdown and JSON give one.
pub fn render(results: &ExperimentResults, format: OutputFormat) -> Result<Vec<Artifact>, CliError> {
    let stem = results.family.name();
    let art = |suffix: &str, contents: String| Artifact {
        name: format!("{stem}{suffix}.{}", format.extension()),
        contents,
    };
    Ok(match format {
        OutputFormat::Csv => vec![
            art("_bias", results.wide_csv(Metric::Bias)?),
            art("_mse", results.wide_csv(Metric::Mse)?),
            art("_cells", results.long_csv()?),
        ],
        OutputFormat::Md => vec![art("", results.markdown())],
        OutputFormat::Json => vec![art("", results.json()?)],
    })
}

/// Writes artifacts into `dir` (created if missing) and returns their paths.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    artifacts
        .iter()
        .map(|a| {
            let path = dir.join(&a.name);
            fs::write(&path, &a.contents)?;
            Ok(path)
        })
        .collect()
}

/// Result of fitting one data set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitOutput {
    pub family: Family,
    pub estimator: String,
    pub n: usize,
    pub parameters: BTreeMap<String, f64>,
    pub objective: Option<f64>,
    pub converged: bool,
    pub fallback_used: bool,
    pub iterations: usize,
    pub in_param_space: bool,
}

/// Fits `sample` with `spec`. `seed` only matters for estimators that draw
/// their own noise.
pub fn fit_sample(
    family: Family,
    spec: EstimatorSpec,
    sample: &Sample,
    seed: u64,
) -> Result<FitOutput, CliError> {
    spec.validate(family)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut rng = replication_stream(seed, 0, StreamPurpose::Estimator);
    let report = spec
        .fit(family, sample, &mut rng)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(FitOutput {
        family,
        estimator: spec.label(),
        n: sample.len(),
        parameters: family
            .parameter_names()
            .iter()
            .zip(report.params.values())
            .map(|(name, v)| (name.to_string(), *v))
            .collect(),
        objective: report.objective_at_opt,
        converged: report.converged,
        fallback_used: report.fallback_used,
        iterations: report.iterations,
        in_param_space: report.params.in_param_space(),
    })
}

/// Reads a data file and fits it; see [`fit_sample`].
pub fn fit_file(
    path: &Path,
    family: Family,
    spec: EstimatorSpec,
    seed: u64,
) -> Result<FitOutput, CliError> {
    let sample = data::read_data(path)?;
    fit_sample(family, spec, &sample, seed)
}
