//! Command-line front end for `monideal`: argument parsing, report
//! formatting, and the reference-computation runner.

pub mod commands;
pub mod parse;
pub mod report;
pub mod repro;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{exit_code, Cli};
pub use parse::{format_ideal, parse_ideal, parse_vector, ParseError};
pub use report::{Check, RunReport, SCHEMA, SCHEMA_VERSION};

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            exit_code(&report)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
