//! The `adjq` command line: argument parsing, command dispatch and output.
//!
//! Every command produces one JSON document, written pretty-printed with
//! sorted keys and a trailing newline. Exit status is 0 on success, 1 on a
//! parse or validation error, and 2 when `check` finds a failing property.

mod commands;
mod input;

pub use commands::{cmd_check, cmd_convert, cmd_coupling, cmd_explain, cmd_lattice, cmd_stat};
pub use input::{load_cdf, load_json, parse_json, parse_samples_csv, Format};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("parse error in {file}{}: {message}", line.map(|l| format!(" line {l}")).unwrap_or_default())]
    Parse {
        file: String,
        line: Option<usize>,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

impl From<crate::error::Error> for CliError {
    fn from(e: crate::error::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "adjq", version, about = "Adjusted quantile statistics on step distributions")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Input file; `lattice` and `coupling` take two.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,

    /// Input format, inferred from the extension by default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Shape template (JSON).
    #[arg(long, global = true)]
    pub shape: Option<PathBuf>,

    /// Handicap schedule (JSON).
    #[arg(long, global = true)]
    pub handicap: Option<PathBuf>,

    /// Lower quantile level in (0, 1).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub quantile: Option<f64>,

    /// Dual shape template (JSON).
    #[arg(long, global = true)]
    pub dual_shape: Option<PathBuf>,

    /// Dual handicap schedule (JSON).
    #[arg(long, global = true)]
    pub dual_handicap: Option<PathBuf>,

    /// Master seed for `check`.
    #[arg(long, global = true, env = "ADJQ_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Trials per check for `check`.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate a statistic on a distribution.
    Stat,
    /// Convert a template to its other representation, or to its dual.
    Convert {
        /// Map to the dual class instead of the other representation.
        #[arg(long)]
        dual: bool,
    },
    /// FOSD join and meet of two distributions.
    Lattice,
    /// Comonotone coupling of two distributions, or checks on a joint.
    Coupling,
    /// Run the property suite.
    Check {
        /// Add the mean as a join-separability candidate (expected to fail).
        #[arg(long)]
        inject_mean: bool,
    },
    /// Per-cell breakdown of a statistic.
    Explain,
}

/// A command's report and whether it counts as a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub suite_failed: bool,
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let report = match &config.command {
        Command::Stat => cmd_stat(config)?,
        Command::Convert { dual } => cmd_convert(config, *dual)?,
        Command::Lattice => cmd_lattice(config)?,
        Command::Coupling => cmd_coupling(config)?,
        Command::Explain => cmd_explain(config)?,
        Command::Check { inject_mean } => {
            let (report, passed) = cmd_check(config, *inject_mean)?;
            return Ok(Outcome {
                report,
                suite_failed: !passed,
            });
        }
    };
    Ok(Outcome {
        report,
        suite_failed: false,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Parses `args`, runs the command, writes its report and returns the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("adjq: {e}");
            return e.exit_code();
        }
    };
    let text = render(&outcome.report);
    let written = match &config.output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("adjq: {}", CliError::Io(e));
        return 1;
    }
    if outcome.suite_failed {
        2
    } else {
        0
    }
}
