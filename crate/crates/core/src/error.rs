use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("GF({p}^{m}) is not a supported finite field")]
    InvalidField { p: u32, m: u32 },

    #[error("no field embedding from GF({from}) into GF({to})")]
    NoEmbedding { from: u32, to: u32 },

    #[error("operands live in incompatible rings: {0}")]
    IncompatibleRings(String),

    #[error("cannot evaluate at t = 0")]
    EvaluateAtZero,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: String, got: String },

    #[error("matrix is not invertible over its ring")]
    NotInvertible,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element is not a twisted involution")]
    NotTwistedInvolution,

    #[error("semilinear map fixes the point {witness:?}")]
    FixedPointFound { witness: Vec<u32> },

    #[error("no fixed-point-free semilinear involution exists here: {0}")]
    NoInvolution(String),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("no standard-pair decomposition: {0}")]
    NotStandardPair(String),

    #[error("no square root of the given element with a hermitian rescale")]
    NoRescale,

    #[error("product over the automorphism group does not commute: {0}")]
    NonCommutingFactors(String),
}
