use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("coefficient {0} is not representable in the coefficient field")]
    Unrepresentable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("unit ideal: {0}")]
    UnitIdeal(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("image is not contained in the kernel: {0}")]
    NotSubmodule(String),

    #[error("exterior power exponent must be non-negative, got {0}")]
    NegativeExponent(i64),

    #[error("empty generator sequence")]
    EmptySequence,

    #[error("ideal is not contained in the ambient ideal: {0}")]
    NotContained(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("broken complex: {0}")]
    BrokenComplex(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("{0}")]
    Invalid(String),
}
