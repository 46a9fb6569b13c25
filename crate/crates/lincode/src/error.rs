use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto process exit codes: parse failures → 2,
/// enumeration/search limits → 3, design violations → 4, anything else → 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid dimensions: n={n}, k={k}")]
    InvalidDimensions { n: usize, k: usize },

    #[error("generator matrix is rank-deficient: rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },

    #[error("row index {index} out of range for {rows} rows")]
    RowIndexOutOfRange { index: usize, rows: usize },

    #[error("coordinate {index} out of range for length {len}")]
    BitIndexOutOfRange { index: usize, len: usize },

    #[error("invalid weight parameters: k={k}, t={t}")]
    BadWeightParams { k: usize, t: usize },

    #[error("word length {k} exceeds the {limit}-bit sequence limit")]
    WordWidthLimit { k: usize, limit: usize },

    #[error("rank {rank} out of range 1..={count}")]
    RankOutOfRange { rank: u64, count: u64 },

    #[error("codeword weight {actual} does not match t = {expected}")]
    WeightMismatch { expected: usize, actual: usize },

    #[error("k = {k} exceeds the enumeration limit {limit}; raise the limit explicitly to proceed")]
    EnumerationLimit { k: usize, limit: usize },

    #[error("equivalence search refused: {what} = {value} exceeds limit {limit}")]
    EquivLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid design{}: {msg}", .block.map(|b| format!(" (block {b})")).unwrap_or_default())]
    InvalidDesign { block: Option<usize>, msg: String },

    #[error("duplicate record id: {id}")]
    DuplicateId { id: String },

    #[error("set {label} not found in store")]
    UnknownSet { label: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
