//! `robertson`: build, certify and tabulate generalized Robertson witnesses.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 for
//! usage or configuration errors.

mod commands;
mod matrix_io;
mod specs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use robertson_core::certify::SuiteConfig;

use commands::{Format, Outcome};
use specs::{TolOverride, USpec, VSpec};

#[derive(Parser, Debug)]
#[command(
    name = "robertson",
    version,
    about = "Generalized Robertson maps and their entanglement witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the Choi matrix of the map with its parameters
    Build(Common),
    /// Run every certificate and report pass/fail per check
    Certify {
        #[command(flatten)]
        common: Common,
        /// Random product projectors for the positivity check
        #[arg(long, default_value_t = 1000)]
        positivity_trials: usize,
        /// Random pairs for the self-duality check
        #[arg(long, default_value_t = 200)]
        duality_trials: usize,
    },
    /// Tabulate Tr(W rho) along the isotropic family
    Curve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda_max: f64,
    },
    /// List the eigenvalues of the witness next to the closed form
    Spectrum(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Block size N; the map acts on 4N x 4N matrices
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
    /// canonical | seed:<k> | cseed:<k> | file:<path>
    #[arg(long, default_value = "canonical")]
    u: USpec,
    /// identity | seed:<k> | file:<path>
    #[arg(long)]
    v1: Option<VSpec>,
    /// identity | seed:<k> | file:<path>
    #[arg(long)]
    v2: Option<VSpec>,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance override, <check>=<value>; repeatable
    #[arg(long = "tol", value_name = "CHECK=VALUE")]
    tol: Vec<TolOverride>,
    /// json | csv | text (default depends on the command)
    #[arg(long, value_enum)]
    output: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out_path: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<SuiteConfig> {
        let n = self.n as usize;
        let mut cfg = SuiteConfig::new(n, self.u.resolve(n)?);
        cfg.v1 = self
            .v1
            .as_ref()
            .map(|v| v.resolve(n))
            .transpose()
            .context("invalid V1")?;
        cfg.v2 = self
            .v2
            .as_ref()
            .map(|v| v.resolve(n))
            .transpose()
            .context("invalid V2")?;
        cfg.seed = self.seed;
        for t in &self.tol {
            cfg.tolerances.set(&t.check, t.value)?;
        }
        // surfaces map-level errors before any command starts
        cfg.map()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let (common, outcome) = match &cli.command {
        Command::Build(c) => (
            c,
            commands::build(&c.config()?, c.output.unwrap_or(Format::Json))?,
        ),
        Command::Certify {
            common,
            positivity_trials,
            duality_trials,
        } => {
            let mut cfg = common.config()?;
            cfg.positivity_trials = *positivity_trials;
            cfg.duality_trials = *duality_trials;
            (
                common,
                commands::certify(&cfg, common.output.unwrap_or(Format::Text))?,
            )
        }
        Command::Curve {
            common,
            points,
            lambda_min,
            lambda_max,
        } => {
            let cfg = common.config()?;
            let format = common.output.unwrap_or(Format::Csv);
            (
                common,
                commands::curve(&cfg, *lambda_min, *lambda_max, *points, format)?,
            )
        }
        Command::Spectrum(c) => (
            c,
            commands::spectrum(&c.config()?, c.output.unwrap_or(Format::Csv))?,
        ),
    };
    Ok((outcome, common.out_path.clone()))
}

fn emit(body: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(outcome, path)| {
        emit(&outcome.body, path.as_ref())?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
