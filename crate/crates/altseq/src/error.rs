use thiserror::Error;

/// Errors surfaced by the library. Validation failures map to CLI exit code 2,
/// verification failures to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("n must be at least 1")]
    EmptyDomain,
    #[error("oracle too large: n = {n} exceeds brute-force cap {cap}")]
    OracleTooLarge { n: usize, cap: usize },
    #[error("n = {n} exceeds resource limit {limit}")]
    ResourceLimit { n: usize, limit: usize },
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("duplicate sample point n = {0}")]
    DuplicateSample(u64),
    #[error("singular linear system")]
    SingularSystem,
    #[error("missing column: {0}")]
    MissingColumn(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
