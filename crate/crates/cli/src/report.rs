//! Rendering of experiment results.
//!
//! * wide tables: one row per `(ϑ₀, n)` (and parameter coordinate), one
//!   column per estimator, for bias and MSE separately;
//! * a long table with one record per cell at full precision, which parses
//!   back into the same [`McSummary`] values;
//! * Markdown with four decimals, and JSON.
//!
//! Every artifact ends with a provenance footer (seed, replications, code
//! version) and contains no timestamps, so reruns are byte-identical.

use serde::Serialize;
use stein_mde::montecarlo::{EstimatorId, EstimatorSpec, McSummary};
use stein_mde::{Family, ParamVector};

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The cells of one experiment, in row-major order: `ϑ₀`, then `n`, then
/// estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResults {
    pub family: Family,
    pub seed: u64,
    pub reps: usize,
    pub version: String,
    pub cells: Vec<McSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Bias,
    Mse,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Bias => "bias",
            Metric::Mse => "mse",
        }
    }

    fn of(self, s: &McSummary) -> &[f64] {
        match self {
            Metric::Bias => &s.bias,
            Metric::Mse => &s.mse,
        }
    }
}

struct Row<'a> {
    theta0: ParamVector,
    n: usize,
    cells: Vec<&'a McSummary>,
}

impl ExperimentResults {
    pub fn new(cfg: &ExperimentConfig, cells: Vec<McSummary>) -> Self {
        Self {
            family: cfg.family,
            seed: cfg.seed,
            reps: cfg.reps,
            version: VERSION.to_string(),
            cells,
        }
    }

    /// Estimator columns in first-appearance order.
    pub fn columns(&self) -> Vec<EstimatorSpec> {
        let mut out: Vec<EstimatorSpec> = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.spec()) {
                out.push(c.spec());
            }
        }
        out
    }

    fn rows(&self) -> Vec<Row<'_>> {
        let mut rows: Vec<Row<'_>> = Vec::new();
        for c in &self.cells {
            match rows.last_mut() {
                Some(r) if r.theta0 == c.theta0 && r.n == c.n => r.cells.push(c),
                _ => rows.push(Row {
                    theta0: c.theta0,
                    n: c.n,
                    cells: vec![c],
                }),
            }
        }
        rows
    }

    fn footer(&self) -> Vec<String> {
        let failures: Vec<String> = self
            .cells
            .iter()
            .filter(|c| c.failure_count > 0)
            .map(|c| {
                format!(
                    "failures: {} at theta0={} n={}: {} of {}",
                    c.spec(),
                    theta_text(&c.theta0),
                    c.n,
                    c.failure_count,
                    c.reps
                )
            })
            .collect();
        let mut lines = vec![format!(
            "family={} seed={} reps={} version={}",
            self.family, self.seed, self.reps, self.version
        )];
        lines.extend(failures);
        lines
    }

    /// Wide CSV: `theta0,n,param,<estimator>...` at full precision.
    pub fn wide_csv(&self, metric: Metric) -> Result<String, CliError> {
        let columns = self.columns();
        let names = self.family.parameter_names();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["theta0".to_string(), "n".into(), "param".into()];
        header.extend(columns.iter().map(|c| c.label()));
        w.write_record(&header).map_err(runtime)?;
        for row in self.rows() {
            for (i, name) in names.iter().enumerate() {
                let mut record = vec![theta_text(&row.theta0), row.n.to_string(), name.to_string()];
                for col in &columns {
                    let cell = row.cells.iter().find(|c| c.spec() == *col);
                    record.push(cell.map_or(String::new(), |c| full(metric.of(c)[i])));
                }
                w.write_record(&record).map_err(runtime)?;
            }
        }
        let mut out = String::from_utf8(w.into_inner().map_err(runtime)?).map_err(runtime)?;
        out.push_str(&comment_footer(&self.footer()));
        Ok(out)
    }

    /// Long CSV, one record per cell; [`parse_long_csv`] inverts it.
    pub fn long_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(LONG_HEADER).map_err(runtime)?;
        for c in &self.cells {
            let v = c.theta0.values();
            let second = |x: &[f64]| x.get(1).map_or(String::new(), |v| full(*v));
            w.write_record([
                c.family.name().to_string(),
                full(v[0]),
                second(v),
                c.n.to_string(),
                c.estimator.name().to_string(),
                c.tuning.map_or(String::new(), full),
                c.reps.to_string(),
                c.seed.to_string(),
                c.failure_count.to_string(),
                full(c.bias[0]),
                second(&c.bias),
                full(c.mse[0]),
                second(&c.mse),
            ])
            .map_err(runtime)?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(runtime)?).map_err(runtime)?;
        out.push_str(&comment_footer(&self.footer()));
        Ok(out)
    }

    /// Markdown bias and MSE tables, four decimals, two-parameter cells as
    /// `(x, y)`.
    pub fn markdown(&self) -> String {
        let columns = self.columns();
        let mut out = String::new();
        for metric in [Metric::Bias, Metric::Mse] {
            out.push_str(&format!("## {} ({})\n\n", metric.name(), self.family));
            out.push_str("| theta0 | n |");
            for c in &columns {
                out.push_str(&format!(" {} |", c.label()));
            }
            out.push_str("\n|---|---|");
            out.push_str(&"---|".repeat(columns.len()));
            out.push('\n');
            for row in self.rows() {
                out.push_str(&format!("| {} | {} |", theta_text(&row.theta0), row.n));
                for col in &columns {
                    let text = row
                        .cells
                        .iter()
                        .find(|c| c.spec() == *col)
                        .map_or(String::new(), |c| short(metric.of(c)));
                    out.push_str(&format!(" {text} |"));
                }
                out.push('\n');
            }
            out.push('\n');
        }
        for line in self.footer() {
            out.push_str(&format!("<!-- {line} -->\n"));
        }
        out
    }

    pub fn json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(runtime)?;
        s.push('\n');
        Ok(s)
    }
}

const LONG_HEADER: [&str; 13] = [
    "family",
    "theta0_1",
    "theta0_2",
    "n",
    "estimator",
    "tuning",
    "reps",
    "seed",
    "failure_count",
    "bias_1",
    "bias_2",
    "mse_1",
    "mse_2",
];

/// Parses the output of [`ExperimentResults::long_csv`] back into cells.
pub fn parse_long_csv(text: &str) -> Result<Vec<McSummary>, CliError> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let bad = |msg: String| CliError::Config(format!("cells table: {msg}"));
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(LONG_HEADER) {
        return Err(bad("unexpected header".into()));
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let ctx = |what: &str| bad(format!("record {}: bad {what}", i + 1));
        let num = |j: usize, what: &str| -> Result<f64, CliError> {
            rec[j].parse::<f64>().map_err(|_| ctx(what))
        };
        let pair = |j: usize, what: &str| -> Result<Vec<f64>, CliError> {
            let mut v = vec![num(j, what)?];
            if !rec[j + 1].is_empty() {
                v.push(num(j + 1, what)?);
            }
            Ok(v)
        };
        let family: Family = rec[0].parse().map_err(|_| ctx("family"))?;
        let theta0 = ParamVector::new(family, &pair(1, "theta0")?).map_err(|_| ctx("theta0"))?;
        let estimator: EstimatorId = rec[4].parse().map_err(|_| ctx("estimator"))?;
        let tuning = if rec[5].is_empty() {
            None
        } else {
            Some(num(5, "tuning")?)
        };
        let int = |j: usize, what: &str| rec[j].parse::<u64>().map_err(|_| ctx(what));
        out.push(McSummary {
            family,
            theta0,
            n: int(3, "n")? as usize,
            estimator,
            tuning,
            reps: int(6, "reps")? as usize,
            seed: int(7, "seed")?,
            failure_count: int(8, "failure_count")? as usize,
            bias: pair(9, "bias")?,
            mse: pair(11, "mse")?,
        });
    }
    Ok(out)
}

fn runtime<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Runtime(e.to_string())
}

fn comment_footer(lines: &[String]) -> String {
    lines.iter().map(|l| format!("# {l}\n")).collect()
}

/// 17 significant digits: enough to recover every `f64` exactly.
fn full(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn four(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.4}")
    } else {
        "-".to_string()
    }
}

fn short(v: &[f64]) -> String {
    match v {
        [x] => four(*x),
        _ => format!(
            "({})",
            v.iter().map(|x| four(*x)).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn theta_text(p: &ParamVector) -> String {
    match p.values() {
        [x] => format!("{x}"),
        v => format!(
            "({})",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ),
    }
}
