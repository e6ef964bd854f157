use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: {0} qubits vs {1} qubits")]
    SizeMismatch(usize, usize),
    #[error("invalid Pauli literal: {0}")]
    PauliLiteral(String),
    #[error("residual has nontrivial syndrome; decode before classifying")]
    NontrivialSyndrome,
    #[error("unknown builtin schedule `{0}`")]
    UnknownBuiltin(String),
    #[error("step {step} out of range 0..={max}")]
    StepOutOfRange { step: usize, max: usize },
    #[error("invalid operation: {0}")]
    InvalidOp(String),
    #[error("seam mismatch: {0}")]
    SeamMismatch(String),
    #[error("schedule has no syndrome map")]
    MissingSyndromeMap,
    #[error("unknown location {0}")]
    UnknownLocation(usize),
    #[error("fault does not match the arity of location {0}")]
    FaultArity(usize),
    #[error("location count {0} is below 3")]
    TooFewLocations(u64),
    #[error("coefficient A must be positive")]
    NonPositiveA,
    #[error("invalid weight {0:?}: expected a nonnegative decimal or fraction")]
    InvalidWeight(String),
}
