//! Command-line front end for `qutrit_thermal`.
//!
//! [`run`] does everything `main` does, writing to the given streams, so tests
//! can drive the tool in-process.

// `!(x > 0.0)` and friends are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;
use serde_json::json;

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use args::{Cli, Command};
use config::{FileConfig, PointConfig, SpectrumConfig, SweepConfig, ThresholdConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_BRACKETED: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag or config value.
    Usage(String),
    /// A library call failed for numerical reasons.
    Numeric(String),
    /// The threshold bracket does not straddle the entanglement edge.
    NotBracketed(String),
    Io(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
            CliError::NotBracketed(_) => EXIT_NOT_BRACKETED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::NotBracketed(m) | CliError::Io(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<qutrit_thermal::Error> for CliError {
    fn from(e: qutrit_thermal::Error) -> Self {
        use qutrit_thermal::Error as E;
        match e {
            E::Point { i, j, source } => {
                // Keep the category of the underlying failure, and the grid location.
                let msg = format!("grid point ({i}, {j}) failed: {source}");
                match CliError::from(*source) {
                    CliError::Usage(_) => CliError::Usage(msg),
                    CliError::NotBracketed(_) => CliError::NotBracketed(msg),
                    _ => CliError::Numeric(msg),
                }
            }
            E::NotBracketed { .. } => CliError::NotBracketed(e.to_string()),
            E::InvalidArgument(_)
            | E::InvalidSweep(_)
            | E::InvalidLogBase(_)
            | E::NonPositiveTemperature(_)
            | E::CaseMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Point(_) => "point",
        Command::Sweep(_) => "sweep",
        Command::Spectrum(_) => "spectrum",
        Command::Threshold(_) => "threshold",
    }
}

fn dispatch(cli: &Cli) -> Result<commands::Report, CliError> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Point(a) => commands::point(&PointConfig::resolve(a, &file)?),
        Command::Sweep(a) => commands::sweep(&SweepConfig::resolve(a, &file)?),
        Command::Spectrum(a) => commands::spectrum(&SpectrumConfig::resolve(a, &file)?),
        Command::Threshold(a) => commands::threshold(&ThresholdConfig::resolve(a, &file)?),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. The one-line JSON summary goes to `stdout`, the table and any error
/// message to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = out.write_all(rendered.as_bytes());
            return e.exit_code();
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli) {
        Ok(report) => {
            let _ = stderr.write_all(report.table.as_bytes());
            let _ = writeln!(stdout, "{}", report.summary);
            report.code
        }
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(stderr, "error: {e}");
            let record =
                json!({ "command": name, "status": "error", "exit_code": code, "error": e.to_string() });
            let _ = writeln!(stdout, "{record}");
            code
        }
    }
}
