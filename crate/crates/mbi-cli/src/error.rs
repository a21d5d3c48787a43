use mbi_core::MbiError;
use mbi_field::FieldError;
use thiserror::Error;

/// Failures of the command-line front end, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Field(FieldError),

    #[error("property failures: {}", .0.join(", "))]
    PropertyFailure(Vec<String>),
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::InvalidConfig(msg) => CliError::Config(msg),
            FieldError::Io(io) => CliError::Io(io),
            other => CliError::Field(other),
        }
    }
}

impl From<MbiError> for CliError {
    fn from(e: MbiError) -> Self {
        CliError::Field(FieldError::Core(e))
    }
}

impl CliError {
    /// `0` is success; `1` configuration or i/o, `2` a degenerate field state, `3` a failed property.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Field(FieldError::Core(MbiError::DegenerateState { .. })) => 2,
            CliError::PropertyFailure(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
