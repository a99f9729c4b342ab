//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::{keys_help, ExperimentConfig};
use super::emit::{render, Format, Report};
use super::reports;
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "unicrit", version, about = "Truncated dynamical series of z^d + c", after_long_help = keys_help())]
pub struct Cli {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Override one config key, as `key=value`. Repeatable; applied after the file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; the results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Forward orbit of `start` with its derivative.
    Orbit,
    /// Preimage tree of `target` to depth `n_tree`, with sampled derivative checks.
    Preimages,
    /// Poincaré series levels at `target` and exponent `t`.
    Poincare,
    /// Forward series along the critical value at exponent `t`.
    Forward,
    /// Pressure root on `[t_lo, t_hi]`.
    Exponent,
    /// Backward-contraction profile on the dyadic δ grid.
    Rprofile,
    /// Children of the critical disk of radius `delta`.
    Children,
    /// Close-return staircase, bridges and integral ratios.
    Returns,
    /// Forward and Poincaré series side by side on the t grid.
    Theoremb,
    /// Derivative growth next to the R profile.
    Lb2bc,
    /// Pull-back diameter decay of the disk of radius `delta_ref`.
    Decay,
    /// Recompute the Feigenbaum parameter from superstable parameters.
    RegenFeigenbaum,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    for assignment in &cli.overrides {
        cfg.apply_override(assignment)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit<R: Report>(report: R, format: Format) -> Result<String> {
    render(&report, format)
}

/// Builds the report for `command` and renders it.
pub fn execute(command: Command, cfg: &ExperimentConfig, format: Format) -> Result<String> {
    match command {
        Command::Orbit => emit(reports::orbit_report(cfg)?, format),
        Command::Preimages => emit(reports::preimages_report(cfg)?, format),
        Command::Poincare => emit(reports::poincare_report(cfg)?, format),
        Command::Forward => emit(reports::forward_report(cfg)?, format),
        Command::Exponent => emit(reports::exponent_report(cfg)?, format),
        Command::Rprofile => emit(reports::profile_report(cfg)?, format),
        Command::Children => emit(reports::children_report(cfg)?, format),
        Command::Returns => emit(reports::returns_report(cfg)?, format),
        Command::Theoremb => emit(reports::theoremb_report(cfg)?, format),
        Command::Lb2bc => emit(reports::lb2bc_report(cfg)?, format),
        Command::Decay => emit(reports::decay_report(cfg)?, format),
        Command::RegenFeigenbaum => emit(reports::feigenbaum_report(), format),
    }
}

fn run_parsed(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let text = match cli.threads {
        Some(0) => return Err(Error::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))?
            .install(|| execute(cli.command, &cfg, cli.format))?,
        None => execute(cli.command, &cfg, cli.format)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_parsed(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
