//! Command-line front end for the `qortho` library.
//!
//! ```text
//! qortho <command> [--family F] [--n N] [--q Q] [--gamma G] [--xi X] [--c C]
//!                  [--method M] [--format csv|json|svg] [--out PATH]
//!                  [--grid start:stop:count] [--exact]
//! ```
//!
//! Commands: `eval`, `coeffs`, `zeros`, `table <table1..table4>`,
//! `verify [suite]` and `sweep`. Exit codes: 0 ok, 1 usage, 2 numerical
//! failure, 3 verification failure.
//!
//! * [`config`] — argument grammar and validation;
//! * [`commands`] — evaluation, zeros, preset tables and sweeps;
//! * [`suites`] — the verification suites;
//! * [`output`] — reports and their CSV/JSON forms;
//! * [`svg`] — scatter-plot rendering.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod suites;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::config::{Cli, Command, Format};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};
use crate::output::Report;

/// Runs the parsed command and returns its report and requested format.
pub fn execute(cli: &Cli) -> Result<(Report, Format), CliError> {
    let (report, common, default_format) = match &cli.command {
        Command::Eval(c) => (commands::eval(c)?, c, Format::Csv),
        Command::Coeffs(c) => (commands::coefficients(c)?, c, Format::Csv),
        Command::Zeros(c) => (commands::zeros(c)?, c, Format::Csv),
        Command::Table { preset, common } => (commands::table(*preset, common)?, common, Format::Csv),
        Command::Verify { suite, common } => (suites::verify(*suite), common, Format::Json),
        Command::Sweep(c) => (commands::sweep(c)?, c, Format::Csv),
    };
    Ok((report, common.format.unwrap_or(default_format)))
}

/// Serializes a report in the requested format.
pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => Ok(report.to_csv()),
        Format::Json => Ok(report.to_json()),
        Format::Svg => report
            .figure
            .as_ref()
            .map(|f| f.render())
            .ok_or_else(|| CliError::Usage("this command has no svg output".into())),
    }
}

fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Eval(c) | Command::Coeffs(c) | Command::Zeros(c) | Command::Sweep(c) => c.out.as_deref(),
        Command::Table { common, .. } | Command::Verify { common, .. } => common.out.as_deref(),
    }
}

fn run_parsed(cli: &Cli) -> Result<i32, CliError> {
    let (report, format) = execute(cli)?;
    let text = render(&report, format)?;
    match output_path(cli) {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(if report.failed { EXIT_VERIFY } else { EXIT_OK })
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { EXIT_OK };
        }
    };
    match run_parsed(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qortho: {e}");
            e.exit_code()
        }
    }
}
