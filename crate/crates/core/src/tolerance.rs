/// Numerical comparison context shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute tolerance on matrix entries.
    pub abs: f64,
    /// Relative cutoff below which an eigenvalue or singular value counts as zero.
    pub rank: f64,
}

impl Tolerance {
    pub const DEFAULT_ABS: f64 = 1e-9;
    pub const DEFAULT_RANK: f64 = 1e-10;

    pub fn new(abs: f64, rank: f64) -> Self {
        Tolerance { abs, rank }
    }

    pub fn with_abs(abs: f64) -> Self {
        Tolerance {
            abs,
            ..Self::default()
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: Self::DEFAULT_ABS,
            rank: Self::DEFAULT_RANK,
        }
    }
}
