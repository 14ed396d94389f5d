//! The `gwenum` command-line front end.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code together with the rendered [`Report`]. Exit code 0 means every
//! check passed, 1 means some check failed and 2 means a usage error.

pub mod args;
mod commands;
pub mod data;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, OutputFormat};
pub use error::{CliError, CliResult};
pub use report::{Check, Report, Status, ValueEntry};

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Runs the CLI on `argv`, whose first element is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let done = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return Outcome {
                code: if done { 0 } else { 2 },
                stdout: if done { text.clone() } else { String::new() },
                stderr: if done { String::new() } else { text },
                report: None,
            };
        }
    };
    let start = Instant::now();
    match commands::dispatch(&cli, echo) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let stdout = match cli.global.format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json() + "\n",
            };
            Outcome {
                code: if report.passed() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}
