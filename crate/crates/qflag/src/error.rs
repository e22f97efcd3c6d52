use std::fmt;

/// Exit status of the `qflag` binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    Usage = 1,
    MathFailure = 2,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] qflag_core::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn format(msg: impl fmt::Display) -> Self {
        Error::Format(msg.to_string())
    }

    pub fn io(path: impl fmt::Display, source: std::io::Error) -> Self {
        Error::Io { path: path.to_string(), source }
    }

    /// Singular inputs and failed mathematical preconditions map to 2,
    /// everything a user can fix by changing the invocation maps to 1.
    pub fn exit_code(&self) -> ExitCode {
        use qflag_core::Error as E;
        match self {
            Error::Math(E::Singular | E::NotSymplectic { .. } | E::NotInRu { .. } | E::ChartBoundary) => {
                ExitCode::MathFailure
            }
            _ => ExitCode::Usage,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
