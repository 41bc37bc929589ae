use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use srlim_cli::{run, Cli, CliError, EXIT_INPUT_ERROR};

fn read_input(cli: &Cli) -> Result<String, CliError> {
    match &cli.file {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match read_input(&cli).and_then(|text| run(&cli, &text)) {
        Ok(outcome) => {
            print!("{}", outcome.report.render());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
