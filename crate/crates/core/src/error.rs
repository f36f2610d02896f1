use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the folding library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sequence character {ch:?} at position {position}")]
    InvalidBead { ch: char, position: usize },
    #[error("sequence must contain at least 2 beads, got {0}")]
    SequenceTooShort(usize),
    #[error("invalid interaction weight for pair ({j}, {k}): {reason}")]
    InvalidWeight { j: usize, k: usize, reason: String },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("turn component {0} outside {{-1, 0, 1}}")]
    TurnOutOfRange(i32),
    #[error("turn step {0} is not encoded by this layout")]
    NotEncoded(usize),
    #[error("axis draw has no entry for pair ({0}, {1})")]
    MissingDraw(usize, usize),
    #[error("assignment covers {provided} variables but the polynomial needs {required}")]
    MissingAssignment { required: usize, provided: usize },
    #[error("assembled polynomial has degree {0}, expected at most 2")]
    DegreeTooHigh(usize),
    #[error("negative penalty weight {name} = {value}")]
    NegativePenalty { name: &'static str, value: f64 },
    #[error("sequence of {beads} beads exceeds the enumeration budget of {max} beads")]
    EnumerationTooLarge { beads: usize, max: usize },
    #[error("{vars} variables exceed the exhaustive search budget of {max}")]
    ExhaustiveTooLarge { vars: usize, max: usize },
    #[error("{qubits} qubits exceed the statevector budget of {max}")]
    QubitBudget { qubits: usize, max: usize },
    #[error("empty sample set")]
    EmptySamples,
    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaOutOfRange(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
