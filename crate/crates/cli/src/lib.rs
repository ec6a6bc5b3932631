//! Front-end for `wgrate-core`: γ sweeps, physical-unit rate queries,
//! single-direction queries and the oracle suite.
//!
//! Exit codes: 0 success, 1 usage, 2 solver failure, 3 verification failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format, Method, Spacing};
pub use commands::{OutputRecord, RateReport, SingleDirectionReport, SweepSpec, CSV_HEADER};
pub use error::CliError;

/// Where a command's output went, plus anything meant for stderr.
#[derive(Debug, Default)]
pub struct Rendered {
    pub body: String,
    pub warnings: Vec<String>,
}

/// Runs one parsed command and renders its output.
pub fn execute(cli: Cli) -> Result<Rendered, CliError> {
    match cli.command {
        Command::Sweep(a) => {
            let spec = SweepSpec::new(a.gamma_min, a.gamma_max, a.points, a.spacing)?;
            let tol = commands::tolerance(a.common.tol)?;
            let records = commands::run_sweep(&spec, a.species, &tol)?;
            let body = match a.format {
                Format::Csv => output::records_csv(&records),
                Format::Json => output::to_json(&records),
                Format::Table => output::records_table(&records),
            };
            emit(body, Vec::new(), a.common.out.as_deref())
        }
        Command::Rate(a) => {
            let tol = commands::tolerance(a.common.tol)?;
            let report = commands::run_rate(a.area, a.power, a.method, a.species, &tol)?;
            let body = match a.format {
                Format::Csv => output::rate_csv(&report),
                Format::Json => output::to_json(&report),
                Format::Table => output::rate_table(&report),
            };
            let warnings = report.warning.iter().cloned().collect();
            emit(body, warnings, a.common.out.as_deref())
        }
        Command::SingleDirection(a) => {
            if let Some(area) = a.area {
                if !(area > 0.0 && area.is_finite()) {
                    return Err(CliError::Usage(format!("area must be positive, got {area}")));
                }
            }
            let report = commands::run_single_direction(a.power, a.theta, a.species)?;
            let body = match a.format {
                Format::Csv => output::single_direction_csv(&report),
                Format::Json => output::to_json(&report),
                Format::Table => output::single_direction_table(&report),
            };
            emit(body, Vec::new(), a.common.out.as_deref())
        }
        Command::Verify(a) => {
            let reports = commands::run_verify(a.tol, a.inject_expected_offset)?;
            let body = match a.format {
                Format::Csv => output::oracle_csv(&reports),
                Format::Json => output::oracle_json(&reports),
                Format::Table => output::oracle_table(&reports),
            };
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let rendered = emit(body, Vec::new(), a.out.as_deref())?;
            if failed > 0 {
                return Err(CliError::Verification {
                    failed,
                    total: reports.len(),
                    output: rendered.body,
                });
            }
            Ok(rendered)
        }
    }
}

fn emit(body: String, warnings: Vec<String>, out: Option<&std::path::Path>) -> Result<Rendered, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &body)?;
            Ok(Rendered {
                body: String::new(),
                warnings,
            })
        }
        None => Ok(Rendered { body, warnings }),
    }
}

/// Parses `args`, runs the command, writes to stdout/stderr and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli) {
        Ok(rendered) => {
            for w in &rendered.warnings {
                eprintln!("warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(rendered.body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return 1;
            }
            0
        }
        Err(e) => {
            if let CliError::Verification { output, .. } = &e {
                print!("{output}");
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
