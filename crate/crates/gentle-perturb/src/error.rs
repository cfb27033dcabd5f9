use thiserror::Error;

/// Errors produced by grid construction, transforms, and operator assembly.
#[derive(Debug, Error)]
pub enum GpError {
    #[error("grid point count {0} is not a power of two")]
    NonPowerOfTwo(usize),

    #[error("grid half-width {half_width} violates the padding rule L >= 2M (M = {support_bound})")]
    PaddingViolation { half_width: f64, support_bound: f64 },

    #[error("space tags are incompatible: {0:?} vs {1:?}")]
    TagMismatch(crate::discretization::SpaceTag, crate::discretization::SpaceTag),

    #[error("smoothing parameter must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("evaluation point {0} lies on the spectral support")]
    OnSupport(f64),

    #[error("function takes a non-finite value at t = {0}")]
    NonFiniteValue(f64),

    #[error("unknown density name: {0}")]
    UnknownDensity(String),

    #[error("invalid density parameters: {0}")]
    InvalidDensity(String),

    #[error("schedule must span at least two decades and be decreasing")]
    BadSchedule,

    #[error("coupling is singular: |1 + 2{pi}i{gamma} P+rho| < {min} at a grid point", pi = '\u{3c0}', gamma = '\u{3b3}')]
    SingularCoupling { min: f64 },

    #[error("eigendecomposition failed: {0}")]
    EigFailure(String),

    #[error("eigenvector matrix condition number {0:.3e} exceeds the guard 1e8")]
    IllConditioned(f64),

    #[error("contour passes too close to the spectrum (margin {margin:.3e})")]
    ContourTooClose { margin: f64 },

    #[error("contour count {0:.3} is not within 0.2 of an integer")]
    NonIntegerCount(f64),

    #[error("linear algebra backend error: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for GpError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        GpError::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GpError>;
