use thiserror::Error;

/// Errors raised by the library. Mathematical verification failures are not
/// errors; they are returned as data inside reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("decomposition violation: {0}")]
    Decompose(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate Gram matrix is out of scope")]
    DegenerateLattice,

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
