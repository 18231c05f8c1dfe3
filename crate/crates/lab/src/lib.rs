//! Experiment harness for the `vilenkin` crate.
//!
//! A run reads an [`config::ExperimentConfig`], dispatches to one of the
//! runners in [`experiments`] and writes a [`record::Table`] as CSV or JSON.
//! [`checks`] holds the numbered invariant suite behind `vilenkin-lab check`.
//!
//! Exit codes: 0 success, 1 bad input or I/O, 2 a check failed, 3 a capacity
//! limit was hit.

pub mod checks;
pub mod config;
pub mod experiments;
pub mod record;

use thiserror::Error;
use vilenkin::VilenkinError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config: {0}")]
    Config(String),

    #[error("capacity: {0}")]
    Capacity(String),

    #[error(transparent)]
    Core(VilenkinError),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<VilenkinError> for LabError {
    fn from(e: VilenkinError) -> Self {
        match e {
            VilenkinError::Capacity { .. } | VilenkinError::Resolution { .. } => {
                LabError::Capacity(e.to_string())
            }
            VilenkinError::Exponent(_) => LabError::Config(e.to_string()),
            other => LabError::Core(other),
        }
    }
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Capacity(_) => EXIT_CAPACITY,
            _ => EXIT_INPUT,
        }
    }
}

/// Cell budget: the flag wins over `VILENKIN_CELL_CAP`, which wins over the default.
pub fn resolve_cell_cap(flag: Option<usize>) -> Result<usize, LabError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("VILENKIN_CELL_CAP") {
        Ok(text) => text.trim().parse().map_err(|_| {
            LabError::Config(format!("VILENKIN_CELL_CAP={text:?} is not a cell count"))
        }),
        Err(_) => Ok(config::DEFAULT_CELL_CAP),
    }
}
