use std::process::ExitCode;

use clap::Parser;
use kraus_entanglement::cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
