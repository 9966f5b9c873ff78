//! `ptsphere`: construction and verification of reduced PT-symmetric models.
//!
//! Exit status is 0 when every requested check passes, 1 when any fails and
//! 2 on a configuration error.

mod algebra;
mod args;
mod output;
mod spectra;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{CliError, RunArgs};
use output::{emit, Status};

#[derive(Parser, Debug)]
#[command(name = "ptsphere", version, about = "Reduction and spectral checks for PT-symmetric models on the complex sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a MASA: generator count, symmetry, commutativity, independence.
    Validate(RunArgs),
    /// Build the reduced Hamiltonian and its integrals and check the identities.
    Reduce(RunArgs),
    /// Dirac-bracket conservation, bracket preservation, PT invariance, Jacobian suite.
    Verify(RunArgs),
    /// Discretized spectrum of one model against its closed form.
    Spectrum(RunArgs),
    /// PT phase scan of the λ-model over λ².
    Scan(RunArgs),
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let (report, csv, args) = match &cli.command {
        Command::Validate(a) => (algebra::validate(a)?, None, a),
        Command::Reduce(a) => (algebra::reduce(a)?, None, a),
        Command::Verify(a) => (algebra::verify(a)?, None, a),
        Command::Spectrum(a) => {
            let (r, c) = spectra::spectrum(a)?;
            (r, c, a)
        }
        Command::Scan(a) => {
            let (r, c) = spectra::scan(a)?;
            (r, c, a)
        }
    };
    emit(&report, args, csv)?;
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ptsphere: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
