use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("vector has zero norm")]
    ZeroNorm,
    #[error("operator is not hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    NotUnitTrace(f64),
    #[error("factor index {index} out of range for {factors} factors")]
    InvalidFactor { index: usize, factors: usize },
    #[error("closed form requires odd dimension, got {0}")]
    EvenDimension(usize),
    #[error("dimensions {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("pre- and post-selected states are orthogonal (|<beta|alpha>| = {0:e})")]
    OrthogonalSelection(f64),
    #[error("post-selection has zero probability")]
    ZeroPostSelection,
    #[error("overlap vanishes, phase undefined")]
    VanishingOverlap,
    #[error("truncation guard violated: |z| = {modulus} needs dimension >= {required}, have {trunc}")]
    TruncationGuard { modulus: f64, required: f64, trunc: usize },
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("period {period} does not divide {dim}")]
    BadPeriod { period: usize, dim: usize },
    #[error("potential samples are not {period}-periodic (index {index})")]
    NotPeriodic { period: usize, index: usize },
}
