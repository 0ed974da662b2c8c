use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("arity {arity} exceeds the supported maximum of {max}")]
    ArityOverflow { arity: usize, max: usize },

    #[error("table has {len} entries, expected 2^{arity}")]
    TableLength { arity: usize, len: usize },

    #[error("entry at mask {mask} is {value}, expected -1 or +1")]
    NotBoolean { mask: usize, value: String },

    #[error("pure high degree of the zero function is undefined")]
    ZeroFunction,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("formula references x{var} but arity is {arity}")]
    ArityTooSmall { var: usize, arity: usize },

    #[error("degree bound {degree} outside 0..={arity}")]
    InvalidDegree { degree: usize, arity: usize },

    #[error("alpha must be at least 1, got {0}")]
    InvalidAlpha(String),

    #[error("degree is at most {degree}; no dual witness exists at this level")]
    NotALowerBound { degree: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("inner sign degree is 0; the composition bound is trivial")]
    TrivialCase,

    #[error("certificate is identically zero")]
    ZeroCertificate,

    #[error("every Γ∘D_i has norm zero")]
    DegenerateCertificate,

    #[error("matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("limits exceeded: {0}")]
    LimitsExceeded(String),

    #[error("malformed input: {0}")]
    Format(String),
}
