use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("the declared relation contains a cycle through `{0}`")]
    Cycle(String),

    #[error("undeclared element `{0}`")]
    UndeclaredElement(String),

    #[error("duplicate cover `{0} {1}`")]
    DuplicateCover(String, String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid interval: element {0} is not below element {1}")]
    InvalidInterval(usize, usize),

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The coefficient ring cannot perform the requested computation.
    #[error("capability error: {0}")]
    Capability(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid scalar `{value}` for ring {ring}")]
    InvalidScalar { value: String, ring: String },

    #[error("operands belong to different algebras")]
    ContextMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("tuple {0:?} is not a multichain of the poset")]
    InvalidMultichain(Vec<usize>),

    #[error("submodule is not contained in the numerator")]
    NotContained,

    #[error("submodule is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("submodule is not closed under multiplication")]
    NotSubalgebra,

    #[error("quotient algebra is not commutative")]
    NotCommutative,

    #[error("algebra is not associative")]
    NotAssociative,

    #[error("algebra has no identity element")]
    NoIdentity,

    #[error("idempotent splitting failed: {0}")]
    SplittingFailed(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("map is not an order isomorphism: {0}")]
    NotOrderIsomorphism(String),

    #[error("invalid structure constants: {0}")]
    InvalidTable(String),
}

impl Error {
    /// Errors caused by the choice of coefficient ring rather than by bad input.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_))
    }
}
