//! Experiment configuration files.
//!
//! ```toml
//! family = "burr"
//! theta0 = [[0.8, 2.0], [2.0, 5.0]]
//! n = [10, 50, 100]
//! estimators = ["ml", "cvm", "stein"]
//! reps = 2000
//! seed = 7
//! format = "md"
//!
//! [tuning]
//! stein = [0.5, 1, 3]
//! ```
//!
//! `stein` expands into one column per value of `tuning.stein`; a single
//! weight can also be given inline as `"stein(0.5)"`. One-parameter families
//! take scalars in `theta0`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use stein_mde::montecarlo::{EstimatorId, EstimatorSpec};
use stein_mde::{Family, ParamVector};
use toml::Spanned;

use crate::error::CliError;

pub const DEFAULT_REPS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Md,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Md => "md",
            OutputFormat::Json => "json",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Md),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv, md or json)")),
        }
    }
}

/// A validated experiment: every `(ϑ₀, n)` row is run for every estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub theta0: Vec<ParamVector>,
    pub n: Vec<usize>,
    pub estimators: Vec<EstimatorSpec>,
    pub reps: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    family: Spanned<String>,
    theta0: Spanned<Vec<ThetaEntry>>,
    n: Spanned<Vec<i64>>,
    estimators: Spanned<Vec<Spanned<String>>>,
    reps: Option<Spanned<i64>>,
    seed: Option<Spanned<i64>>,
    format: Option<Spanned<String>>,
    #[serde(default)]
    tuning: BTreeMap<String, Spanned<Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ThetaEntry {
    Scalar(f64),
    Vector(Vec<f64>),
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&src)
    }

    pub fn from_toml_str(src: &str) -> Result<Self, CliError> {
        let raw: RawConfig =
            toml::from_str(src).map_err(|e| CliError::Config(format!("config: {e}")))?;
        let at = |span: std::ops::Range<usize>, msg: String| {
            CliError::Config(format!("config line {}: {msg}", line_of(src, span.start)))
        };

        let family: Family = raw
            .family
            .get_ref()
            .parse()
            .map_err(|e: String| at(raw.family.span(), e))?;

        if raw.theta0.get_ref().is_empty() {
            return Err(at(raw.theta0.span(), "theta0 list is empty".into()));
        }
        let mut theta0 = Vec::new();
        for entry in raw.theta0.get_ref() {
            let values = match entry {
                ThetaEntry::Scalar(v) => vec![*v],
                ThetaEntry::Vector(v) => v.clone(),
            };
            let p = ParamVector::new(family, &values)
                .map_err(|e| at(raw.theta0.span(), e.to_string()))?;
            theta0.push(p);
        }

        if raw.n.get_ref().is_empty() {
            return Err(at(raw.n.span(), "n list is empty".into()));
        }
        let mut n = Vec::new();
        for &v in raw.n.get_ref() {
            if v < 1 {
                return Err(at(raw.n.span(), format!("sample size {v} must be at least 1")));
            }
            n.push(v as usize);
        }

        for (key, values) in &raw.tuning {
            let id: EstimatorId = key
                .parse()
                .map_err(|e: stein_mde::Error| at(values.span(), e.to_string()))?;
            if id != EstimatorId::Stein {
                return Err(at(values.span(), format!("estimator `{key}` has no tuning parameter")));
            }
            if values.get_ref().is_empty() {
                return Err(at(values.span(), format!("tuning list for `{key}` is empty")));
            }
        }

        if raw.estimators.get_ref().is_empty() {
            return Err(at(raw.estimators.span(), "estimator list is empty".into()));
        }
        let mut estimators = Vec::new();
        for entry in raw.estimators.get_ref() {
            let err = |msg: String| at(entry.span(), msg);
            let spec: EstimatorSpec = entry
                .get_ref()
                .parse()
                .map_err(|e: stein_mde::Error| err(e.to_string()))?;
            let expanded = match (spec.id, spec.tuning) {
                (EstimatorId::Stein, None) => {
                    let list = raw.tuning.get("stein").ok_or_else(|| {
                        err("`stein` needs weights: add `stein = [...]` under [tuning] or write `stein(a)`".into())
                    })?;
                    list.get_ref().iter().map(|&a| EstimatorSpec::stein(a)).collect()
                }
                _ => vec![spec],
            };
            for spec in expanded {
                spec.validate(family).map_err(|e| err(e.to_string()))?;
                if estimators.contains(&spec) {
                    return Err(err(format!("estimator `{spec}` listed twice")));
                }
                estimators.push(spec);
            }
        }

        let reps = match &raw.reps {
            None => DEFAULT_REPS,
            Some(r) if *r.get_ref() >= 1 => *r.get_ref() as usize,
            Some(r) => return Err(at(r.span(), "reps must be at least 1".into())),
        };
        let seed = match &raw.seed {
            None => DEFAULT_SEED,
            Some(s) if *s.get_ref() >= 0 => *s.get_ref() as u64,
            Some(s) => return Err(at(s.span(), "seed must be non-negative".into())),
        };
        let format = match &raw.format {
            None => OutputFormat::default(),
            Some(f) => f.get_ref().parse().map_err(|e: String| at(f.span(), e))?,
        };

        Ok(Self {
            family,
            theta0,
            n,
            estimators,
            reps,
            seed,
            format,
        })
    }

    /// The built-in study layout for `family`: its parameter grid,
    /// sample sizes and estimator columns.
    pub fn builtin(family: Family, reps: usize, seed: u64) -> Self {
        let scalars = |v: &[f64]| -> Vec<ParamVector> {
            v.iter()
                .map(|&x| ParamVector::new(family, &[x]).expect("valid built-in parameter"))
                .collect()
        };
        let pairs = |v: &[[f64; 2]]| -> Vec<ParamVector> {
            v.iter()
                .map(|x| ParamVector::new(family, x).expect("valid built-in parameter"))
                .collect()
        };
        let plain = |ids: &[EstimatorId]| -> Vec<EstimatorSpec> {
            ids.iter().map(|&id| EstimatorSpec::plain(id)).collect()
        };
        let stein = |a: &[f64]| a.iter().map(|&a| EstimatorSpec::stein(a)).collect::<Vec<_>>();
        let weights = [0.25, 0.5, 1.0, 2.0, 3.0];
        use EstimatorId::*;
        let (theta0, n, mut estimators) = match family {
            Family::Exponential => (
                scalars(&[0.5, 2.0, 5.0, 10.0]),
                vec![10, 25, 50, 100, 200],
                plain(&[Ml, Mse, Cvm]),
            ),
            Family::Rayleigh => (
                scalars(&[0.5, 2.0, 5.0, 10.0]),
                vec![10, 25, 50, 100, 200],
                plain(&[Ml, Mom, Am, Cvm]),
            ),
            Family::Burr => (
                pairs(&[[0.8, 2.0], [2.0, 5.0], [5.0, 0.8]]),
                vec![10, 25, 50, 100, 200],
                plain(&[Ml, Cvm]),
            ),
            Family::ExpPoly => (
                pairs(&[[1.0, -0.05], [0.0, -0.5], [-0.5, -3.0]]),
                vec![10, 25, 50, 100, 200],
                plain(&[Sm, Nce]),
            ),
        };
        estimators.extend(match family {
            Family::ExpPoly => stein(&[0.25, 0.5, 1.0, 2.0, 3.0, 5.0]),
            _ => stein(&weights),
        });
        Self {
            family,
            theta0,
            n,
            estimators,
            reps,
            seed,
            format: OutputFormat::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
family = "burr"
theta0 = [[0.8, 2.0], [2.0, 5.0]]
n = [10, 50]
estimators = ["ml", "cvm", "stein"]
reps = 20
seed = 7
format = "md"

[tuning]
stein = [0.5, 3]
"#;

    fn err(src: &str) -> String {
        ExperimentConfig::from_toml_str(src).unwrap_err().to_string()
    }

    #[test]
    fn parses_and_expands_tuning() {
        let c = ExperimentConfig::from_toml_str(GOOD).unwrap();
        assert_eq!(c.family, Family::Burr);
        assert_eq!(c.theta0.len(), 2);
        assert_eq!(c.n, vec![10, 50]);
        let labels: Vec<String> = c.estimators.iter().map(|e| e.label()).collect();
        assert_eq!(labels, ["ml", "cvm", "stein(0.5)", "stein(3)"]);
        assert_eq!((c.reps, c.seed, c.format), (20, 7, OutputFormat::Md));
    }

    #[test]
    fn defaults_and_scalar_theta() {
        let c = ExperimentConfig::from_toml_str(
            "family = \"exponential\"\ntheta0 = [0.5, 2]\nn = [10]\nestimators = [\"stein(1)\"]\n",
        )
        .unwrap();
        assert_eq!(c.reps, DEFAULT_REPS);
        assert_eq!(c.seed, DEFAULT_SEED);
        assert_eq!(c.theta0[1].values(), &[2.0]);
    }

    #[test]
    fn diagnostics_name_the_line() {
        let empty = GOOD.replace(r#"estimators = ["ml", "cvm", "stein"]"#, "estimators = []");
        assert_eq!(err(&empty), "config line 5: estimator list is empty");
        let wrong = GOOD.replace(r#""cvm""#, r#""sm""#);
        assert!(err(&wrong).starts_with("config line 5: estimator sm does not apply"));
        let bad_theta = GOOD.replace("[2.0, 5.0]", "[2.0, -5.0]");
        assert!(err(&bad_theta).starts_with("config line 3:"));
        let bad_a = GOOD.replace("stein = [0.5, 3]", "stein = [0.5, -3]");
        assert!(err(&bad_a).starts_with("config line 5:"), "{}", err(&bad_a));
        let no_a = GOOD.replace("stein = [0.5, 3]", "");
        assert!(err(&no_a).contains("`stein` needs weights"));
        assert!(err("family = \"normal\"\n").starts_with("config"));
        let extra = format!("{GOOD}\nbogus = 1\n");
        assert!(err(&extra).contains("bogus"));
    }

    #[test]
    fn builtin_layouts() {
        let e = ExperimentConfig::builtin(Family::Exponential, 10, 1);
        assert_eq!(e.theta0.len() * e.n.len(), 20);
        assert_eq!(e.estimators.len(), 8);
        let p = ExperimentConfig::builtin(Family::ExpPoly, 10, 1);
        assert_eq!(p.estimators.len(), 8);
        for f in Family::ALL {
            let c = ExperimentConfig::builtin(f, 10, 1);
            for spec in &c.estimators {
                spec.validate(f).unwrap();
            }
        }
    }
}
