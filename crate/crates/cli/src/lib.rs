//! Command-line front end for `cbpower`: reads system, family and measure
//! files, runs the engine, the convergence tables or the Monte Carlo
//! estimator, and renders the result as a table, CSV or JSON.

pub mod args;
mod commands;
pub mod error;
pub mod input;
pub mod report;

use args::{Cli, Command};
use error::{CliError, Result};
use report::{render, Numeric};

/// Rendered document plus the failure to report once it is printed.
pub struct Outcome {
    pub document: String,
    pub failure: Option<CliError>,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let numeric = Numeric {
        mode: cli.numeric,
        digits: cli.digits as usize,
    };
    let done = |document| Outcome {
        document,
        failure: None,
    };
    match &cli.command {
        Command::Analyze(a) => Ok(done(render(
            &commands::analyze(a, numeric)?,
            cli.format,
            numeric,
        )?)),
        Command::Validate(a) => {
            let (doc, ok) = commands::validate(a)?;
            let failure =
                (!ok).then(|| CliError::CheckFailed(format!("validation failed: {}", doc.summary)));
            Ok(Outcome {
                document: render(&doc, cli.format, numeric)?,
                failure,
            })
        }
        Command::Converge(a) => Ok(done(render(
            &commands::converge(a, numeric)?,
            cli.format,
            numeric,
        )?)),
        Command::Sample(a) => Ok(done(render(
            &commands::sample(a, numeric)?,
            cli.format,
            numeric,
        )?)),
        Command::InvariantCheck(a) => Ok(done(render(
            &commands::invariant_check(a, numeric)?,
            cli.format,
            numeric,
        )?)),
    }
}
