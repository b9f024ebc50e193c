use std::process::ExitCode;

use cavity_cli::Cli;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cavity_cli::execute(&cli, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cavity: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
