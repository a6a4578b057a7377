use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("GF({0}) is not supported (q must be at most 13)")]
    UnsupportedField(u32),
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point is not singular")]
    NotSingular,
    #[error("graph is disconnected (vertex {0} unreachable)")]
    Disconnected(u32),
    #[error("{0} is not a prime")]
    NotAPrime(u64),
    #[error("at least one prime is required")]
    NoPrimes,
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("switching partition is invalid: {0}")]
    InvalidPartition(String),
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(u32, u32),
    #[error("graph6 cannot encode {0} vertices")]
    FormatOverflow(u64),
    #[error("malformed graph6 data: {0}")]
    Graph6(String),
    #[error("{what}: size {size} exceeds budget {budget}")]
    SizeBudgetExceeded { what: String, size: u128, budget: u128 },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("classification mismatch in case {case}: {missing} missing, {extra} unexpected")]
    ClassificationMismatch { case: String, missing: usize, extra: usize },
    #[error("no witness for clique type {0}")]
    WitnessUnavailable(String),
    #[error("greek {0} lies in no part of the switching partition")]
    CoverageGap(u32),
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("graph is not strongly regular")]
    NotSrg,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
