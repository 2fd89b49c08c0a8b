use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("cannot parse {0:?} as a permutation")]
    Parse(String),
    #[error("value {value} out of range for length {n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("Lehmer entry {entry} too large at position {position}")]
    InvalidLehmer { position: usize, entry: usize },
    #[error("pattern basis must be nonempty")]
    EmptyBasis,
    #[error("length {0} exceeds the enumeration limit of 64")]
    TooLong(usize),
    #[error("count overflow at n={n}, k={k}")]
    Overflow { n: usize, k: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("unknown generating function {0:?}")]
    UnknownSeries(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
