use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("negative exponent at byte {0}")]
    NegativeExponent(usize),
    #[error("invalid variable context: {0}")]
    Context(String),
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("the zero vector field has no filtration")]
    ZeroField,
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("local dimension unsupported: {0}")]
    LocalDimensionUnsupported(String),
    #[error("defining equation is not reduced: {0}")]
    NotSquarefree(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("weights: {0}")]
    Weights(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("degenerate sampler: {0}")]
    DegenerateSampler(String),
}

pub type Result<T> = std::result::Result<T, Error>;
