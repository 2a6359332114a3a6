//! Experiment runner: every estimator, analytic formula and algebra check as
//! a reproducible command writing CSV, JSON or SVG.

pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

use std::fmt;
use std::path::Path;

pub use commands::run;
pub use config::{Command, ExperimentConfig, Format};
pub use output::Output;
pub use svg::{render_trace_svg, SvgStyle};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Invalid parameters or a failed computation; exit status 1.
    Domain(String),
    /// Reading the config or writing output failed; exit status 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sle_core::SleError> for CliError {
    fn from(e: sle_core::SleError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<sle_virasoro::VirasoroError> for CliError {
    fn from(e: sle_virasoro::VirasoroError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Merge the optional config file with flag values.
pub fn load_config(file: Option<&Path>, flags: &ExperimentConfig) -> Result<ExperimentConfig, CliError> {
    let base = match file {
        Some(p) => {
            let src = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            ExperimentConfig::from_json(&src)?
        }
        None => ExperimentConfig::default(),
    };
    Ok(base.overlay(flags))
}

/// Run and write the rendered output to `config.out`, or return it when no
/// path is set.
pub fn execute(config: &ExperimentConfig) -> Result<Option<String>, CliError> {
    let text = run(config)?.render()?;
    match &config.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
