use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root orders differ: {0} vs {1}")]
    DeltaMismatch(usize, usize),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("modulus q = {0} must be even and at least 2")]
    InvalidModulus(u32),

    #[error("expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("term {0} has degree above 2")]
    NotSecondOrder(String),

    #[error("graph after deletion is not a path of weight-q/2 edges: {0}")]
    NotAPath(String),

    #[error("x{0} is not an end vertex of the path")]
    InvalidGamma(usize),

    #[error("cannot keep {keep} of {len} entries")]
    Truncate { keep: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("zero correlation zone width {z} outside [1, {n}]")]
    InvalidZ { z: usize, n: usize },

    #[error("not a complementary set: {0}")]
    NotAComplementarySet(String),

    #[error("set is not a ZCCS at Z = {0}")]
    NotAZccs(usize),

    #[error("malformed code set file: {0}")]
    FileFormat(String),

    #[error("index {index} out of range (have {len})")]
    Index { index: usize, len: usize },
}
