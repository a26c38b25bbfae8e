use std::path::PathBuf;

use thiserror::Error;

use crate::blocks::Block;

#[derive(Debug, Error)]
pub enum McspError {
    #[error("blocks belong to different strings: {0} and {1}")]
    IdMismatch(Block, Block),

    #[error("block {new} overlaps existing member {existing}")]
    Overlap { existing: Block, new: Block },

    #[error("no member of the list contains {0}")]
    NotContained(Block),

    #[error("position {0} is already occupied")]
    AlreadyOccupied(usize),

    #[error("edge block {0} has no free match")]
    NoFreeMatch(Block),

    #[error("input strings are not related (different character multisets or lengths)")]
    Unrelated,

    #[error("input strings must be non-empty")]
    Empty,

    #[error("instance of length {len} is too large for the exact solver (limit {limit})")]
    TooLargeForExact { len: usize, limit: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("average branching factor must exceed 1, got {0}")]
    DegenerateBranching(f64),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),

    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = McspError> = std::result::Result<T, E>;
