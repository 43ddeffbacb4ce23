use std::path::PathBuf;

use thiserror::Error;

/// Failures of the command-line front end, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 usage/config, 2 data or schema, 3 numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<smt_core::Error> for CliError {
    fn from(e: smt_core::Error) -> Self {
        use smt_core::Error as E;
        match e {
            E::InvalidOrder(_)
            | E::InvalidDimension(_)
            | E::InvalidParameter(_)
            | E::InvalidMode { .. }
            | E::InvalidInterval { .. }
            | E::AnalyticUnavailable(_) => CliError::Usage(e.to_string()),
            E::InvalidGrid(_) | E::LengthMismatch { .. } | E::NonFinite(_) | E::NonUniformGrid(_) => {
                CliError::Data(e.to_string())
            }
            E::UnsupportedDerivative { .. }
            | E::OutOfDomain { .. }
            | E::InsufficientResolution { .. }
            | E::EmptyWindow { .. }
            | E::SingularLeadingCoefficient(_)
            | E::ZeroNorm { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
