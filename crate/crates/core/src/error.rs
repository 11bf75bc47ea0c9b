use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points span an affine subspace of dimension {found}, expected {expected}")]
    DegenerateInput { expected: usize, found: usize },
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("empty input or infeasible intersection")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the supported limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("zero vector where a direction is required")]
    ZeroVector,
    #[error("{count} halfspaces exceed the enumeration guard of {limit}")]
    TooManyHalfspaces { count: usize, limit: usize },
    #[error("displacement {t} outside the verified safe range ({min}, {max})")]
    RangeViolation { t: String, min: String, max: String },
    #[error("cap cut leaves an empty or lower-dimensional set")]
    EmptyOrFlat,
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("search budget of {budget} gap evaluations exhausted without a violation")]
    BudgetExhausted { budget: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
