use thiserror::Error;

/// Errors produced by the library. The CLI maps [`Error::Parse`] to exit
/// status 2 and every other variant to status 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the zero vector has no primitive form")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not pointed")]
    NonPointed,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial is degenerate on face {0}")]
    Degenerate(String),
    #[error("non-degeneracy on face {0} is assumed, not proved")]
    NondegeneracyUnproved(String),
    #[error("{0} is not a candidate pole of the diagram")]
    NotCandidate(String),
    #[error("no Bernstein-Sato root formula or fixture for ideal {0}")]
    NoRootFormula(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("family has {size} forms, the cap is {cap}")]
    FamilyTooLarge { size: usize, cap: usize },
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
