//! `descriptor-lab`: simulate circuits in both pictures, run the verification
//! suites and the protocol demonstrations.

mod args;
mod output;
mod protocol;
mod simulate;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_dim = cli.max_dim;
    let result = match &cli.command {
        Command::Simulate(a) => simulate::run(a, max_dim),
        Command::Verify(a) => verify::run(a),
        Command::Protocol(a) => protocol::run(a, max_dim),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
