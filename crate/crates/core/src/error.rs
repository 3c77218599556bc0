use thiserror::Error;

/// Every failure the library can report.
///
/// The `Display` form is a single line; [`Error::kind`] gives a stable
/// machine-readable tag for the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes, field references or indices that do not fit together.
    #[error("{0}")]
    Structural(String),

    /// An operation was called outside its domain (singular image, det != 1, ...).
    #[error("{0}")]
    Precondition(String),

    /// A weight vector is not admissible for the representation's sign pattern.
    #[error("weight {lambda} rejected in factor {factor}: {reason}")]
    Parity {
        factor: usize,
        lambda: String,
        reason: String,
    },

    /// Malformed presentation, representation, matrix or config text.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Census data that parsed but failed exact validation.
    #[error("{0}")]
    Validation(String),

    /// A size guard refused to materialize an object.
    #[error("{0}")]
    CapExceeded(String),

    /// A relator does not map to the identity of a finite quotient.
    #[error("{0}")]
    Relator(String),

    /// Weight schedules that come out empty or malformed.
    #[error("{0}")]
    Schedule(String),

    /// Convergence fitting could not be carried out.
    #[error("{0}")]
    Fit(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Precondition(_) => "precondition",
            Error::Parity { .. } => "parity",
            Error::Parse { .. } => "parse",
            Error::Validation(_) => "validation",
            Error::CapExceeded(_) => "cap",
            Error::Relator(_) => "relator",
            Error::Schedule(_) => "schedule",
            Error::Fit(_) => "fit",
        }
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
