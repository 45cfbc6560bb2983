use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("amplitude vector has near-zero norm")]
    ZeroVector,
    #[error("expected {expected} amplitudes for {qubits} qubits, got {got}")]
    LengthMismatch {
        qubits: usize,
        expected: usize,
        got: usize,
    },
    #[error("states act on different numbers of qubits ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("no qubit labeled `{0}`")]
    UnknownQubit(String),
    #[error("measurement outcome has vanishing probability")]
    NullOutcome,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("invalid pairing: {0}")]
    BadPairing(String),
    #[error("invalid density matrix: {0}")]
    BadDensity(String),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("decoding is ambiguous: two outcomes share the maximal probability")]
    Ambiguous,
}

pub type Result<T> = std::result::Result<T, Error>;
