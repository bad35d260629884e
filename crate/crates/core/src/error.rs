use std::fmt;

use thiserror::Error;

/// Which Barnett-shift direction a nonreciprocity branch was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Plus => f.write_str("+|delta_B|"),
            Branch::Minus => f.write_str("-|delta_B|"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("steady-state fixed point did not converge after {iterations} iterations (last step {last_step:e})")]
    NonConvergence { iterations: usize, last_step: f64 },

    #[error("drift matrix is not stable (max Re λ = {margin:e}){}", branch.map(|b| format!(" at {b}")).unwrap_or_default())]
    Unstable { margin: f64, branch: Option<Branch> },

    #[error("Lyapunov linear system is singular")]
    SingularSystem,

    #[error("eigenvalue iteration did not converge")]
    EigenFailure,

    #[error("covariance matrix violates the uncertainty principle: {0}")]
    Unphysical(String),

    #[error(
        "symplectic eigenvalue routes disagree: spectral {spectral}, closed form {closed_form}"
    )]
    RouteDisagreement { spectral: f64, closed_form: f64 },

    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),

    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),
}

impl Error {
    pub(crate) fn on_branch(self, branch: Branch) -> Self {
        match self {
            Error::Unstable { margin, .. } => Error::Unstable {
                margin,
                branch: Some(branch),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
