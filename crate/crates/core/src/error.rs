use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid qubit index {0}")]
    InvalidQubit(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("direction is not a unit vector (norm = {0})")]
    InvalidDirection(f64),

    #[error("invalid momentum: {0}")]
    InvalidMomentum(String),

    #[error("invalid rapidity: {0}")]
    InvalidRapidity(f64),

    #[error("state has weight on momentum branch |{0:02b}⟩; only opposite momenta are supported")]
    UnsupportedScenario(usize),

    #[error("spin observable is singular: transformed spatial norm {0}")]
    SingularObservable(f64),

    #[error("direction has vanishing spatial part (norm {0})")]
    SingularDirection(f64),

    #[error("unknown tag `{0}`")]
    UnknownTag(String),
}

pub type Result<T> = std::result::Result<T, Error>;
