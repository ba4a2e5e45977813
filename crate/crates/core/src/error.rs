use thiserror::Error;

/// Errors shared by all workbench operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid bridge spec: {0}")]
    InvalidBridgeSpec(String),
    #[error("set does not reduce injectively modulo the group")]
    Projection,
    #[error("tile size {0} does not divide group order {1}")]
    Divisibility(u64, u64),
    #[error("input has a single interior component")]
    SingleComponent,
    #[error("no scale factor up to {0} satisfies the overlap condition")]
    OverlapSearchExhausted(u32),
    #[error("round limit {limit} exceeded after {} logged rounds", log.len())]
    RoundLimit {
        limit: u32,
        log: Vec<crate::cubes::SpiralRound>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
