use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state count {0}: machines need at least one state")]
    InvalidStateCount(u32),

    #[error("machine space for {0} states does not fit in a 128-bit index")]
    SpaceTooLarge(u32),

    #[error("machine index {index} out of range for {states} states (space size {size})")]
    IndexOutOfRange { states: u32, index: u128, size: u128 },

    #[error("malformed transition table: {0}")]
    MalformedTable(String),

    #[error("step bound must be at least 1")]
    InvalidBound,

    #[error("busy beaver value S({0}) is unknown; use a cutoff policy")]
    UnknownBusyBeaver(u32),

    #[error("outcome was produced with bound {outcome} but policy uses bound {policy}")]
    BoundMismatch { outcome: u64, policy: u64 },

    #[error("only halting outcomes can be accumulated")]
    NonHaltingOutcome,

    #[error("metadata mismatch on {field}: {left} vs {right}")]
    MetadataMismatch {
        field: &'static str,
        left: String,
        right: String,
    },

    #[error("shard coverage overlaps: {0} and {1}")]
    OverlappingShards(String, String),

    #[error("invalid shard spec {0:?}: expected i/m with 0 <= i < m")]
    InvalidShard(String),

    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("no estimate for {0:?}: string never produced")]
    NoEstimate(String),

    #[error("invalid binary string {0:?}")]
    InvalidString(String),

    #[error("tuple length {k} exceeds every light-cone row (widest {widest})")]
    TupleTooLong { k: usize, widest: usize },

    #[error("empty range")]
    EmptyRange,

    #[error("shared support has {0} strings; at least 2 are required")]
    SharedSupportTooSmall(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
