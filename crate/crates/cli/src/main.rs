//! `elim`: prove, check and cross-examine model elimination refutations.

mod check;
mod input;
mod oracle;
mod prove;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit status 1: no refutation within bounds, or verification failed.
const NO: u8 = 1;
/// Exit status 2: usage or input error.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "elim", version, about = "Model elimination theorem prover")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a refutation of a clause set.
    Prove(prove::Args),
    /// Replay a trace against its problem.
    Check(check::Args),
    /// Decide a propositional problem by brute force, or ground a
    /// first-order one.
    Oracle(oracle::Args),
}

/// A diagnostic for stderr with the exit status it implies.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn negative(message: impl Into<String>) -> Failure {
        Failure {
            code: NO,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Prove(args) => prove::run(args),
        Command::Check(args) => check::run(args),
        Command::Oracle(args) => oracle::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
