//! Front end for generating, verifying and tabulating formal Killing fields.

pub mod args;
pub mod cache;
pub mod commands;
pub mod document;
pub mod latex;

use std::path::PathBuf;

use fkf_core::{Ansatz, CheckKind, Engine};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] fkf_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

/// Validated settings shared by `generate` and `verify`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ansatz: Ansatz,
    pub cycles: u32,
    pub max_tower: u32,
    pub format: Format,
    pub checks: Vec<CheckKind>,
    pub out_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let need = Engine::required_tower(self.cycles);
        if self.max_tower < need {
            return Err(CliError::Usage(format!(
                "--max-tower {} is below the floor {need} for {} cycle(s)",
                self.max_tower, self.cycles
            )));
        }
        Ok(())
    }
}
