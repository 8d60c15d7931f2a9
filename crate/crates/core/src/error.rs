use thiserror::Error;

use crate::simplicial::VertexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("d1 * d2 is not zero")]
    ChainConditionViolated,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("vertex {vertex} is out of range 1..={max}")]
    VertexOutOfRange { vertex: u32, max: u32 },

    #[error("the subset must be nonempty")]
    EmptySubset,

    #[error("complex is not flag: {witness} is a minimal non-face")]
    NotFlag { witness: VertexSet },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("coefficient rings differ")]
    RingMismatch,

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("no value bound to generator symbol {0}")]
    UnboundSymbol(String),

    #[error("face {face} is not contained in {set}")]
    FaceOutsideJ { face: VertexSet, set: VertexSet },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("negative multiplicity D_{n} = {value}")]
    NegativeMultiplicity { n: usize, value: String },

    #[error("series must start 1 + 0*t: {0}")]
    InvalidSeries(String),
}
