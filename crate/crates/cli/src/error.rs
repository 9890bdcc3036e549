use std::process::ExitCode;

use qpl_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Bounds(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Bounds(_) => ExitCode::from(3),
            CliError::Degenerate(_) => ExitCode::from(4),
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => ExitCode::from(1),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::OrthogonalSelection(_) | CoreError::ZeroPostSelection | CoreError::VanishingOverlap => {
                CliError::Degenerate(msg)
            }
            CoreError::TruncationGuard { .. } => CliError::Bounds(msg),
            _ => CliError::Usage(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Dimension ceiling for `Z_N` commands.
pub const MAX_DIM: usize = 64;
/// Ceiling for the Fock truncation.
pub const MAX_TRUNC: usize = 256;
/// The structure tensor has `N⁶` entries.
pub const MAX_STRUCTURE_DIM: usize = 11;

pub fn check_dim(name: &str, n: usize, max: usize) -> CliResult<()> {
    if n == 0 || n > max {
        return Err(CliError::Bounds(format!("{name} = {n} outside 1..={max}")));
    }
    Ok(())
}
