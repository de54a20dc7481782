use thiserror::Error;

use crate::relativized::SimplifiabilityReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: atom `{atom}` is outside the declared universe")]
    OutsideDeclaredUniverse {
        atom: String,
        line: usize,
        column: usize,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),

    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),

    #[error("atom limit {requested} exceeds the maximum of {max}")]
    AtomLimit { requested: usize, max: usize },

    #[error("universe has {size} atoms, above the configured limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("{what} is not a subset of {of}")]
    NotSubset { what: String, of: String },

    #[error("target model set is not total-closed: {0}")]
    NotTotalClosed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("program is not simplifiable: {}", .0.summary())]
    NotSimplifiable(Box<SimplifiabilityReport>),

    #[error("criterion Omega is satisfied at Y = {witness}; no forgetting result exists")]
    OmegaSatisfied { witness: String },

    #[error("context enumeration would produce about {estimated} programs, above the limit of {limit}")]
    ContextOverflow { estimated: u128, limit: u128 },

    #[error("qbf line {line}: {message}")]
    QbfParse { line: usize, message: String },
}

/// Coarse classification used for exit codes and error prefixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or configuration.
    Input,
    /// A well-formed question with a negative answer.
    Negative,
    /// An internal self-check failed.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotSimplifiable(_) | Error::OmegaSatisfied { .. } => ErrorKind::Negative,
            Error::VerificationFailed(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::OutsideDeclaredUniverse { .. } | Error::QbfParse { .. } => {
                "parse"
            }
            Error::UnknownAtom(_)
            | Error::InvalidAtomName(_)
            | Error::DuplicateAtom(_)
            | Error::NotSubset { .. } => "config",
            Error::AtomLimit { .. } | Error::UniverseTooLarge { .. } => "limit",
            Error::ContextOverflow { .. } => "bounds",
            Error::NotTotalClosed(_) => "target",
            Error::VerificationFailed(_) => "internal",
            Error::NotSimplifiable(_) => "not-simplifiable",
            Error::OmegaSatisfied { .. } => "omega",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
