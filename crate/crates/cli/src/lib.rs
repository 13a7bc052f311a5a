//! `adft` command-line tool.
//!
//! [`run`] parses arguments, validates them into a [`config::RunConfig`],
//! dispatches to one of the [`commands`] and collects everything the process
//! would print. The binary is a thin wrapper around it, which keeps the whole
//! surface testable in-process.
//!
//! Exit codes: [`EXIT_OK`], [`EXIT_FAILURE`] (a verification or acceptance
//! check failed), [`EXIT_USAGE`] (bad flag value, unwritable output).

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use thiserror::Error;

pub mod args;
pub mod commands;
pub mod config;
pub mod document;
pub mod format;

pub use document::{Provenance, ResultDocument, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value for {flag}: {reason}")]
    Usage { flag: &'static str, reason: String },

    #[error("cannot write --output {path}: {source}")]
    Output { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] adft_core::Error),
}

impl CliError {
    pub fn usage(flag: &'static str, reason: impl Into<String>) -> Self {
        CliError::Usage { flag, reason: reason.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } | CliError::Output { .. } => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAILURE,
        }
    }
}

/// What a command produced: the main body (stdout or `--output`), side notes
/// for stderr, and whether its checks passed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub body: String,
    pub notes: String,
    pub passed: bool,
}

impl Report {
    pub fn ok(body: String) -> Self {
        Self { body, notes: String::new(), passed: true }
    }
}

/// Captured process result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cli: &args::Cli) -> Result<Outcome, CliError> {
    let cfg = config::RunConfig::from_cli(cli)?;
    let report = commands::dispatch(&cfg)?;
    let mut stderr = report.notes;
    let stdout = match &cli.common.output {
        Some(path) => {
            write_output(path, &report.body)?;
            String::new()
        }
        None => report.body,
    };
    let code = if report.passed { EXIT_OK } else { EXIT_FAILURE };
    if !report.passed && stderr.is_empty() {
        stderr.push_str("check failed\n");
    }
    Ok(Outcome { code, stdout, stderr })
}

fn write_output(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|source| CliError::Output { path: path.display().to_string(), source })
}
