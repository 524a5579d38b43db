use thiserror::Error;
use torelli_core::johnson::JohnsonError;
use torelli_core::reptheory::{PartitionError, RepError};
use torelli_core::tensor::TensorError;

/// Failure of a command, classified by exit status.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unreadable input files.
    #[error("{0}")]
    Usage(String),
    /// Malformed partition, shape or configuration document.
    #[error("{0}")]
    Parse(String),
    /// An operation would exceed the term cap.
    #[error("{0}")]
    Resource(String),
    /// Well-formed input outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Domain(_) => 4,
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::TooLong { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::ShapeParse { .. } => CliError::Parse(e.to_string()),
            TensorError::TermCap { .. } => CliError::Resource(format!("resource guard: {e}")),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Partition(p) => p.into(),
            RepError::Tensor(t) => t.into(),
            RepError::TermCap { .. } | RepError::Overflow => {
                CliError::Resource(format!("resource guard: {e}"))
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<JohnsonError> for CliError {
    fn from(e: JohnsonError) -> Self {
        match e {
            JohnsonError::Tensor(t) => t.into(),
            e if e.invariant().is_some() => CliError::Domain(format!("invalid configuration: {e}")),
            e => CliError::Domain(e.to_string()),
        }
    }
}
