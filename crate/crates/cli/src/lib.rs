//! Sweeps, CSV output and the validation suite behind the `casimir-iso`
//! binary.

pub mod baselines;
pub mod commands;
pub mod config;
pub mod error;
pub mod validate;

use std::fs;

pub use config::{Command, RunConfig};
pub use error::{CliError, Result};

/// Output of one command. `failed` counts failed validation checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub failed: usize,
}

pub fn execute(config: &RunConfig) -> Result<Output> {
    let (text, failed) = match config.command {
        Command::Permittivity => (commands::run_permittivity(config)?, 0),
        Command::Eta => (commands::run_eta(config)?, 0),
        Command::Delta => (commands::run_delta(config)?, 0),
        Command::Validate => commands::run_validate(config),
    };
    Ok(Output { text, failed })
}

/// Executes `config` and writes to its output path or stdout.
pub fn run(config: &RunConfig) -> Result<()> {
    let out = execute(config)?;
    match &config.out {
        Some(path) => fs::write(path, &out.text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    if out.failed > 0 {
        let total = out.text.lines().count();
        return Err(CliError::ValidationFailed {
            failed: out.failed,
            total,
        });
    }
    Ok(())
}
