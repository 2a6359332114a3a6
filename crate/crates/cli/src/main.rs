use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sle_cli::{execute, load_config, CliError, ExperimentConfig};

/// Schramm-Loewner evolution experiments.
#[derive(Parser)]
#[command(name = "sle", version, allow_negative_numbers = true)]
struct Cli {
    /// Flat JSON file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: ExperimentConfig,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_config(cli.config.as_deref(), &cli.flags).and_then(|c| execute(&c));
    match result {
        Ok(Some(text)) => match std::io::stdout().write_all(text.as_bytes()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(CliError::Io(e.to_string())),
        },
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(e.exit_code() as u8)
}
