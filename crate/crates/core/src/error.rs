use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported dimension d = {d} for this operation")]
    UnsupportedDimension { d: usize },
    #[error("empty sample")]
    EmptySample,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point subset {indices:?} is affinely dependent")]
    DegenerateSubset { indices: Vec<usize> },
    #[error("no generic direction found after {attempts} seeded candidates")]
    ExhaustedCandidates { attempts: usize },
    #[error("sample is not in general position")]
    NotInGeneralPosition,
    #[error("sample too small: n = {n}, need at least {needed}")]
    SampleTooSmall { n: usize, needed: usize },
    #[error("no escape point candidate passed verification")]
    EscapeUnverified,
    #[error("no breakdown within budget max_m = {max_m} (breakdown count k = {k})")]
    NoBreakdownWithinBudget { max_m: usize, k: usize },
    #[error("invalid contamination plan: {0}")]
    InvalidPlan(String),
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
