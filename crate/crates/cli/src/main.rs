mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::Opts;

#[derive(Parser)]
#[command(name = "qstokes", version, about = "q-series evaluation, resummation and identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point or over a grid
    Eval(Opts),
    /// Resum 2phi0 (or rphi0 with --r) along a lambda spiral
    Resum(Opts),
    /// Check an identity pointwise and emit one report per point
    Verify(Opts),
    /// Search for the normalization under which a formula matches
    Audit(Opts),
    /// Tabulate a function over a grid as CSV
    Scan(Opts),
    /// Run every identity family on generated points
    Suite(Opts),
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or domain violation: exit 2.
    Usage(String),
    /// At least one verification failed: exit 1.
    Failed(String),
}

impl From<qstokes::QError> for CliError {
    fn from(e: qstokes::QError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = |opts: Opts, f: fn(&Opts) -> Result<(), CliError>| opts.resolve().and_then(|o| f(&o));
    let res = match cli.command {
        Command::Eval(o) => run(o, commands::eval),
        Command::Resum(o) => run(o, commands::resum),
        Command::Verify(o) => run(o, commands::verify),
        Command::Audit(o) => run(o, commands::audit),
        Command::Scan(o) => run(o, commands::scan),
        Command::Suite(o) => run(o, commands::suite),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("qstokes: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("qstokes: error: {msg}");
            ExitCode::from(2)
        }
    }
}
