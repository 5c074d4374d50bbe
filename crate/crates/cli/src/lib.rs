//! Command-line front end for the `oddsig` library.

pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::Parser;

pub use commands::{Cli, Command, Format};
pub use input::{parse_input, CliError, InputDocument};
pub use report::{Outcome, Report};

/// Parses `argv`, runs the command and prints the result. Returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let report = Report {
        command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        assumptions: outcome.assumptions,
        result: outcome.result,
        citations: outcome.citations,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, report.to_structured()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    match cli.format {
        Format::Structured => print!("{}", report.to_structured()),
        Format::Text => {
            for line in &outcome.text {
                println!("{line}");
            }
        }
    }
    0
}
