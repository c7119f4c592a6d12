use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} is outside the ground set 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported rewrite: {0}")]
    UnsupportedRewrite(String),

    #[error("not a wedge of spheres: {0} residual monomial(s) remain")]
    NotASphereWedge(usize),

    #[error("normalization exceeded the step budget of {0} rewrites")]
    StepBudgetExceeded(usize),

    #[error("resource limit: {what} is {actual}, bound is {bound}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        bound: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
