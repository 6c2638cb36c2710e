use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty polynomial input")]
    EmptyInput,
    #[error("polynomial has degree 0")]
    ZeroDegree,
    #[error("malformed polynomial: {0}")]
    Malformed(String),
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("coefficient {0} is not finite")]
    NonFinite(f64),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("matrix power exponent must be at least 1")]
    ZeroExponent,
    #[error("dimension {dim} exceeds the guard of {max}")]
    DimensionGuard { dim: usize, max: usize },
    #[error("polynomial is not in nonnegative form (some c_k < 0); theorems inapplicable")]
    NotNonnegativeForm,
    #[error("matrix has a negative entry")]
    NegativeEntry,
    #[error("matrix is reducible")]
    Reducible,
    #[error("matrix is imprimitive")]
    Imprimitive,
    #[error("digraph is not strongly connected; period is ambiguous")]
    NotStronglyConnected,
    #[error("invalid arc ({0}, {1})")]
    InvalidArc(usize, usize),
    #[error("root finder did not converge after {sweeps} sweeps (best residual {residual:e})")]
    RootsNotConverged { sweeps: usize, residual: f64 },
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    PowerIterationNotConverged { iterations: usize, residual: f64 },
    #[error("invalid search parameters: {0}")]
    InvalidSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
