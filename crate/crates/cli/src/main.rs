//! `rescurve` — command-line front end for the resonance curve library.
//!
//! Four subcommands cover the workflow:
//!
//! * `eigen` prints eigenpair data (λ₁, λ₂, ν₁, c₀, ...) for a domain;
//! * `curve` traces the solution curve μ₁(ξ₁) of a catalog problem and
//!   writes it as CSV, optionally with an SVG overlay of the computed curve
//!   (solid) against its asymptotic companion (dashed);
//! * `asymptotic` evaluates a closed-form curve over a ξ₁ grid;
//! * `check` runs a validation suite and reports pass/fail per criterion.
//!
//! Exit codes: 0 on success, 1 on numerical failure (a trace that stopped
//! early, a failed check suite), 2 on usage errors.  The environment
//! variable `RESCURVE_THREADS` caps the worker thread count of parallel
//! grid sweeps.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rescurve",
    version,
    about = "Trace and cross-check solution curves of elliptic problems at resonance",
    after_help = "Exit codes: 0 success, 1 numerical failure, 2 usage error.\n\
                  RESCURVE_THREADS caps the worker thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print eigenpair data for a domain.
    Eigen(commands::EigenArgs),
    /// Trace a solution curve and write CSV (and optionally SVG).
    Curve(commands::CurveArgs),
    /// Evaluate an asymptotic formula over a grid and write CSV.
    Asymptotic(commands::AsymArgs),
    /// Run a validation suite.
    Check(commands::CheckArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eigen(args) => commands::cmd_eigen(args),
        Command::Curve(args) => commands::cmd_curve(args),
        Command::Asymptotic(args) => commands::cmd_asymptotic(args),
        Command::Check(args) => commands::cmd_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
