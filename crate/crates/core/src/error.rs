use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli character {0:?} (expected one of I, X, Y, Z)")]
    InvalidPauliChar(char),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("{n} qubits exceeds the limit of {limit} for this operation")]
    TooManyQubits { n: usize, limit: usize },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("parameter {0:?} is not bound")]
    UnboundParameter(String),
    #[error("expected {expected} parameters, got {actual}")]
    ParameterCount { expected: usize, actual: usize },
    #[error("invalid measurement basis: {0}")]
    InvalidBasis(String),
    #[error("term {term} is not measurable in basis {basis}")]
    IncompatibleTerm { term: String, basis: String },
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown molecule {0:?}")]
    UnknownMolecule(String),
    #[error("no geometry at r = {0} in dataset")]
    UnknownGeometry(f64),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
