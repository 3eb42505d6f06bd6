use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension must be 2 or 3, got {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("axis {axis} is out of range for dimension {dimension}")]
    InvalidAxis { axis: usize, dimension: usize },
    #[error("train length must be at least 1")]
    InvalidTrainLength,
    #[error("speed must be positive")]
    InvalidSpeed,
    #[error("arrival coordinate {arrival} is inconsistent with departure {departure} and sign {sign}")]
    InvalidExtent {
        departure: i64,
        arrival: i64,
        sign: i64,
    },
    #[error("invalid label {0:?}: labels must be non-empty and free of whitespace")]
    InvalidLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("tracks of lines {first:?} and {second:?} overlap")]
    OverlappingTracks { first: String, second: String },
    #[error("schedule has {found} delays but the network has {expected} lines")]
    ScheduleLength { expected: usize, found: usize },
    #[error("no delay given for line {0:?}")]
    MissingDelay(String),
    #[error("delay given for unknown line {0:?}")]
    UnknownLine(String),
    #[error("negative delay {delay} for line {label:?}")]
    NegativeDelay { label: String, delay: String },
    #[error("network is not regular")]
    NotRegular,
    #[error("strategy {strategy} does not apply: {reason}")]
    Unsupported {
        strategy: &'static str,
        reason: String,
    },
    #[error("input schedule has {0} collisions")]
    InvalidSchedule(usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("clique vertex {vertex} is out of range 1..={max}")]
    VertexOutOfRange { vertex: u64, max: u64 },
    #[error("clique assigns line {0} more than once")]
    DuplicateLine(usize),
    #[error("clique assigns no delay to line {0}")]
    IncompleteClique(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A diagnostic produced while reading a network document.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number in the input text; 0 when it does not apply.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}: {}", self.line, self.kind)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("expected 5 or 6 fields, found {0}")]
    FieldCount(usize),
    #[error("malformed {field}: {token:?}")]
    Malformed { field: &'static str, token: String },
    #[error("unknown axis {0:?} (expected x, y or z)")]
    UnknownAxis(String),
    #[error("unknown direction {0:?} (expected + or -)")]
    UnknownDirection(String),
    #[error("train length must be positive")]
    ZeroTrainLength,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("track overlaps the track of line {other:?}")]
    OverlappingTracks { other: String },
}
