use std::process::ExitCode;

use clap::Parser;
use rharmonic_cli::{output_args, run, Cli, CliError, EXIT_VERIFY};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => return fail(&e),
    };
    match &output_args(&cli.command).out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                return fail(&CliError::Io(format!(
                    "cannot write {}: {e}",
                    path.display()
                )));
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    for name in &outcome.failed {
        eprintln!("failed: {name}");
    }
    ExitCode::from(EXIT_VERIFY as u8)
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
