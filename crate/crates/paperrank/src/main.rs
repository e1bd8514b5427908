use std::process::ExitCode;

use clap::Parser;
use paperrank::cli::{Cli, Command};
use paperrank::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(args) => commands::synth(args),
        Command::Rank(args) => commands::rank(args),
        Command::Hist(args) => commands::hist(args),
        Command::Compare(args) => commands::compare(args),
        Command::Aggregate(args) => commands::aggregate(args),
    };
    match result {
        Ok(outcome) => {
            if outcome.exit_code() == 3 {
                eprintln!("warning: power iteration did not converge, output flagged with converged=false");
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
