use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stein_mde::montecarlo::EstimatorSpec;
use stein_mde::Family;
use stein_mde_cli::config::{DEFAULT_REPS, DEFAULT_SEED};
use stein_mde_cli::{
    fit_file, render, run_experiment, write_artifacts, Artifact, CliError, ExperimentConfig,
    OutputFormat,
};

/// Minimum Stein-distance estimation and Monte Carlo comparisons.
#[derive(Parser)]
#[command(name = "stein-mde", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one family to a data file (one positive real per line) and print
    /// the estimate as JSON.
    Fit {
        data: PathBuf,
        #[arg(long)]
        family: Family,
        /// `ml`, `cvm`, `stein(0.5)`, ...
        #[arg(long, default_value = "stein(1)")]
        estimator: EstimatorSpec,
        /// Seed for estimators that draw their own noise (nce).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the Monte Carlo experiment described by a TOML file.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Output directory; without it the tables go to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the bias/MSE tables of the built-in study layouts.
    Tables {
        /// Restrict to these families (repeatable); all four by default.
        #[arg(long)]
        family: Vec<Family>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replications per cell.
        #[arg(long, default_value_t = DEFAULT_REPS, conflicts_with = "full")]
        reps: usize,
        /// Use 100000 replications per cell.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit {
            data,
            family,
            estimator,
            seed,
        } => {
            let out = fit_file(&data, family, estimator, seed)?;
            let text = serde_json::to_string_pretty(&out)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            println!("{text}");
            Ok(())
        }
        Command::Bench {
            config,
            seed,
            reps,
            format,
            out,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(reps) = reps {
                if reps == 0 {
                    return Err(CliError::Config("--reps must be at least 1".into()));
                }
                cfg.reps = reps;
            }
            if let Some(format) = format {
                cfg.format = format;
            }
            emit(&cfg, out.as_deref())
        }
        Command::Tables {
            family,
            seed,
            reps,
            full,
            format,
            out,
        } => {
            let reps = if full { 100_000 } else { reps };
            if reps == 0 {
                return Err(CliError::Config("--reps must be at least 1".into()));
            }
            let families = if family.is_empty() {
                Family::ALL.to_vec()
            } else {
                family
            };
            for family in families {
                let mut cfg = ExperimentConfig::builtin(family, reps, seed);
                cfg.format = format;
                emit(&cfg, out.as_deref())?;
            }
            Ok(())
        }
    }
}

fn emit(cfg: &ExperimentConfig, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let results = run_experiment(cfg)?;
    let artifacts = render(&results, cfg.format)?;
    match out {
        Some(dir) => {
            for path in write_artifacts(dir, &artifacts)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print_all(&artifacts)?,
    }
    Ok(())
}

fn print_all(artifacts: &[Artifact]) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    for a in artifacts {
        if artifacts.len() > 1 {
            writeln!(stdout, "# {}", a.name)?;
        }
        stdout.write_all(a.contents.as_bytes())?;
        if artifacts.len() > 1 {
            writeln!(stdout)?;
        }
    }
    Ok(())
}
