//! `susyqm`: curve data and checks for supersymmetric quantum systems.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical failure,
//! 3 verification failure.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Global};
use commands::CliError;
use output::CurveFile;

fn emit(global: &Global, file: &CurveFile) -> Result<(), CliError> {
    let text = if global.json { file.to_json() } else { file.to_csv() };
    match &global.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a failure code
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let file = match &cli.command {
        Command::Potential(a) => commands::potential(g, a),
        Command::State(a) => commands::state(g, a),
        Command::Spectrum(a) => commands::spectrum(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Natural(a) => commands::natural(g, a),
    };
    match file {
        Ok(f) => emit(g, &f),
        Err(CliError::Verification(f)) => {
            emit(g, &f)?;
            Err(CliError::Verification(f))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("susyqm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
