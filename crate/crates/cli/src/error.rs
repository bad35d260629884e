use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes. Usage errors from argument parsing also exit with
/// [`ExitCode::Config`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Ok = 0,
    Config = 2,
    Unstable = 3,
    NonConvergence = 4,
    Io = 5,
    Parse = 6,
    Numerical = 7,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] cmm_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        use cmm_core::Error as E;
        match self {
            CliError::Config(_) => ExitCode::Config,
            CliError::Io { .. } => ExitCode::Io,
            CliError::Parse { .. } => ExitCode::Parse,
            CliError::Model(e) => match e {
                E::InvalidParams(_) | E::InvalidSpec(_) | E::UnknownFigure(_) => ExitCode::Config,
                E::Unstable { .. } => ExitCode::Unstable,
                E::NonConvergence { .. } => ExitCode::NonConvergence,
                E::SingularSystem
                | E::EigenFailure
                | E::Unphysical(_)
                | E::RouteDisagreement { .. } => ExitCode::Numerical,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
