use thiserror::Error;

/// Failure classes mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input, parse failures, bad configuration. Exit code 2.
    #[error("{0}")]
    Data(String),
    /// Structurally valid input on which no estimate exists. Exit code 3.
    #[error("{0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<eix_core::Error> for CliError {
    fn from(err: eix_core::Error) -> Self {
        match err {
            eix_core::Error::DegenerateSeries(msg) => CliError::Degenerate(msg),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Data(err.to_string())
    }
}
