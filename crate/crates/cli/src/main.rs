use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use thue_cf_cli::{run, Cli, CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            if let CliError::Usage(_) = err {
                eprintln!("run `thue-cf help` for usage");
            }
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    for w in &outcome.warnings {
        eprintln!("{w}");
    }
    let written = match &cli.command.common().output {
        Some(path) => std::fs::write(path, &outcome.stdout),
        None => std::io::stdout().lock().write_all(outcome.stdout.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
