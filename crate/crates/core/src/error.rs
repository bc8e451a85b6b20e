use thiserror::Error;

/// Broad classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied inconsistent or malformed input.
    Validation,
    /// The input was well formed but a numerical precondition failed.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group element does not belong to the group {expected:?}")]
    SpecMismatch { expected: Vec<usize> },
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix {index} is not unitary (deviation {deviation:e})")]
    NotUnitary { index: usize, deviation: f64 },
    #[error("matrix at the identity element is not I (deviation {deviation:e})")]
    IdentityMismatch { deviation: f64 },
    #[error("U({a})U({b}) != U({a}+{b}) (deviation {deviation:e})")]
    NotHomomorphism { a: usize, b: usize, deviation: f64 },
    #[error("vectors do not span C^{m}: rank {rank}")]
    NotAFrame { rank: usize, m: usize },
    #[error("Fourier spectrum has a negative or complex entry at h={index}: {value}")]
    NegativeSpectrum { index: usize, value: String },
    #[error("Gram matrix is not diagonalized by the Fourier matrix (max off-diagonal {max_off_diagonal:e})")]
    NotFourierDiagonal { max_off_diagonal: f64 },
    #[error("target Gram has rank {rank}, frame dimension is {m}")]
    RankMismatch { rank: usize, m: usize },
    #[error("frame is not normalized tight (max deviation of MM* from I: {deviation:e})")]
    NotNormalizedTight { deviation: f64 },
    #[error("commutator of U({p}) and V({t}) is not a scalar multiple of I (deviation {deviation:e})")]
    NonScalarCommutator { p: usize, t: usize, deviation: f64 },
    #[error("U({p}) and V({t}) commute only up to phase {theta}; use the CGU path")]
    NonzeroPhase { p: usize, t: usize, theta: f64 },
    #[error("u[{k}] = {u} is not coprime to n = {n}")]
    NotCoprime { k: usize, u: i64, n: usize },
    #[error("search space of {size} tuples exceeds the guard of {guard}")]
    SearchTooLarge { size: f64, guard: f64 },
    #[error("optimal scale is not positive ({beta}); input is anti-aligned with the target")]
    DegenerateAlignment { beta: f64 },
    #[error("bound envelope violated: A={lower}, t={value}, B={upper}")]
    EnvelopeViolation { lower: f64, value: f64, upper: f64 },
    #[error("eigen-solver did not converge")]
    NoConvergence,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidGroup(_)
            | SpecMismatch { .. }
            | DimensionMismatch { .. }
            | InvalidParameter(_)
            | IndexOutOfRange { .. }
            | NotHermitian { .. }
            | NotUnitary { .. }
            | IdentityMismatch { .. }
            | NotHomomorphism { .. }
            | NotCoprime { .. }
            | SearchTooLarge { .. } => ErrorKind::Validation,
            NotAFrame { .. }
            | NegativeSpectrum { .. }
            | NotFourierDiagonal { .. }
            | RankMismatch { .. }
            | NotNormalizedTight { .. }
            | NonScalarCommutator { .. }
            | NonzeroPhase { .. }
            | DegenerateAlignment { .. }
            | EnvelopeViolation { .. }
            | NoConvergence => ErrorKind::Numerical,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
