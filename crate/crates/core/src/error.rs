use thiserror::Error;

/// Errors raised by every solver, generator and parser in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VckError {
    /// Caller supplied an argument that violates an operation's precondition.
    #[error("input error: {0}")]
    Input(String),

    /// A text file could not be tokenized or a field is malformed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A file parsed line-by-line but is globally inconsistent.
    #[error("structural error: {0}")]
    Structural(String),

    /// An exhaustive routine or bitmask-backed table refused to run.
    #[error("size limit exceeded: {what} is {actual}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// No feasible solution exists for the requested objective.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl VckError {
    pub fn input(msg: impl Into<String>) -> Self {
        VckError::Input(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        VckError::Parse {
            line,
            message: msg.into(),
        }
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        VckError::Structural(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        VckError::Infeasible(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            VckError::Infeasible(_) => 1,
            VckError::Input(_) | VckError::Parse { .. } | VckError::Structural(_) => 2,
            VckError::SizeLimit { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, VckError>;
