use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("expected a {expected}x{expected} matrix, found {found}x{found}")]
    BadDimension { expected: usize, found: usize },
    #[error("qubit index {index} out of range 1..={count}")]
    BadIndex { index: usize, count: usize },
    #[error("state vector has zero norm")]
    ZeroState,
    #[error("entangling angle must be nonzero")]
    ZeroAlpha,
    #[error("entangling angle must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("detuning must be nonzero")]
    ZeroDetuning,
    #[error("pulse amplitude must be nonzero")]
    ZeroAmplitude,
    #[error("no admissible soft-pulse amplitude for n = {n} (radicand {radicand:e} <= 0)")]
    NoValidN { n: u32, radicand: f64 },
    #[error("bad timing: {0}")]
    BadTiming(String),
    #[error("pulse sequence mixes reduced and full models")]
    MixedModels,
    #[error("invalid channel: {0}")]
    BadChannel(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}
