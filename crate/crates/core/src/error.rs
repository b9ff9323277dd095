use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("database size must be at least 2, got {0}")]
    InvalidSize(u64),

    #[error("qubit count {0} is outside the supported range 1..=14")]
    InvalidQubits(u32),

    #[error("amplitude pair is not normalized: |v_tau|^2 + |v_a|^2 = {0}")]
    NotNormalized(f64),

    #[error("polar form out of range: alpha = {alpha}, theta = {theta}")]
    PolarOutOfRange { alpha: f64, theta: f64 },

    #[error("alpha = {0} is degenerate: the target amplitude is 0 or 1")]
    DegenerateAlpha(f64),

    #[error("alpha = {alpha} is outside the nontrivial region (arccos argument {argument})")]
    OutsideNontrivialRegion { alpha: f64, argument: f64 },

    #[error("internal consistency error: probability {0} escaped [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("target index {index} out of range for {size} basis states")]
    TargetOutOfRange { index: usize, size: usize },

    #[error("state vector of length {len} does not match {n_qubits} qubits")]
    LengthMismatch { len: usize, n_qubits: u32 },

    #[error("state leaked out of the target/non-target subspace by {0:e}")]
    Leakage(f64),

    #[error("unknown strategy {0:?}; expected classical, optimal, rough or fixed:<phi>")]
    UnknownStrategy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
