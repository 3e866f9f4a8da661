use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not unitary (deviation {0:e})")]
    NonUnitary(f64),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("qubit indices must be distinct")]
    DuplicateQubits,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("register of {0} qubits exceeds the dense limit of {1}")]
    RegisterTooLarge(usize, usize),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("partial trace must keep at least one qubit")]
    EmptyKeepSet,
    #[error("channel is not linear (reconstruction residual {0:e})")]
    NonLinearChannel(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("pair index {index} out of range for a {len}-pair string")]
    PairOutOfRange { index: usize, len: usize },
    #[error("source and target pair must differ")]
    SourceEqualsTarget,
    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("ensembles have mismatched string lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("input label {0} is not in the declared pair")]
    InputNotInPair(String),
    #[error("LOCC audit failed: {0}")]
    LoccViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
