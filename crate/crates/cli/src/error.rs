use thiserror::Error;

/// Failures surfaced by the command line, split by exit code.
#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    /// Bad flags, parameters or queries; exit code 1.
    #[error("usage error: {0}")]
    Usage(String),
    /// Unreadable, malformed or unsuitable data; exit code 2.
    #[error("data error: {0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<abduction::Error> for CliError {
    fn from(e: abduction::Error) -> Self {
        match e {
            abduction::Error::InvalidParameter(_) | abduction::Error::PercentileRange(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
