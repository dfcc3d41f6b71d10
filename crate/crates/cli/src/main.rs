use std::process::ExitCode;

use clap::Parser;
use fkf_cli::args::Cli;
use fkf_cli::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fkf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
