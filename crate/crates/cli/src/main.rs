// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualcurve_cli::commands;
use dualcurve_cli::config::Options;
use dualcurve_cli::error::CliResult;

#[derive(Parser)]
#[command(
    name = "dualcurve",
    version,
    about = "Frenet frames, curvature and torsion of dual space curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the dual Frenet data of a curve to CSV.
    Frenet(Options),
    /// Synthesize a curve from prescribed dual curvature (and torsion).
    Solve(Options),
    /// Sample a closed-form family and check it against its prescription.
    ClosedForm(Options),
    /// Run every check on a curve and print a pass/fail summary.
    Verify(Options),
    /// Render the real and dual parts to SVG.
    Plot(Options),
}

fn run(cli: Cli) -> CliResult<()> {
    let mut log = std::io::stderr().lock();
    match cli.command {
        Command::Frenet(o) => commands::cmd_frenet(&o.resolve()?, &mut log),
        Command::Solve(o) => commands::cmd_solve(&o.resolve()?, &mut log),
        Command::ClosedForm(o) => commands::cmd_closed_form(&o.resolve()?, &mut log),
        Command::Verify(o) => commands::cmd_verify(&o.resolve()?, &mut log),
        Command::Plot(o) => commands::cmd_plot(&o.resolve()?, &mut log),
    }
}

fn main() -> ExitCode {
    let result = run(Cli::parse());
    if let Err(e) = &result {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(commands::exit_code(&result) as u8)
}
