use std::path::PathBuf;

use thiserror::Error;
use topecycle::hamilton::Violation;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] topecycle::Error),
    #[error("{0}")]
    Violation(Violation),
    #[error("the graph has no Hamiltonian cycle")]
    NoCycle,
    #[error("search gave up after {0} nodes")]
    BudgetExceeded(u64),
    #[error("{failed} of {total} files failed")]
    Sweep { failed: usize, total: usize },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::Core(e) => e.kind(),
            CliError::Violation(v) => v.kind(),
            CliError::NoCycle => "NoHamiltonianCycle",
            CliError::BudgetExceeded(_) => "BudgetExceeded",
            CliError::Sweep { .. } => "SweepFailed",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
