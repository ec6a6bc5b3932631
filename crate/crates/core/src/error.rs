use thiserror::Error;

/// Errors produced by the rate computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Zero transverse wavenumber: no guided mode exists.
    #[error("zero transverse wavenumber (x1 = x2 = 0) is not a guided mode")]
    ZeroTransverse,

    #[error("negative wave-triple component {name} = {value}")]
    NegativeComponent { name: &'static str, value: f64 },

    #[error("mode index pair (0, 0) is excluded")]
    ExcludedMode,

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("invalid transverse cutoff {0}, must be at least 1")]
    InvalidCutoff(usize),

    #[error("transverse cutoff {needed} required at beta = {beta} exceeds the cap {cap}")]
    CutoffExceeded { beta: f64, needed: f64, cap: usize },

    #[error("quadrature did not reach tolerance: estimate {value}, error {error}")]
    QuadratureNonConvergence { value: f64, error: f64 },

    #[error("failed to bracket the multiplier root for gamma = {gamma}")]
    BracketFailure { gamma: f64 },

    #[error("non-finite value while evaluating {0}")]
    NonFinite(&'static str),

    #[error("polar angle {0} outside [0, pi/2)")]
    InvalidTheta(f64),

    #[error("azimuth {0} outside [0, pi/2]")]
    InvalidPhi(f64),

    #[error("species count must be 1 or 2, got {0}")]
    InvalidSpecies(u32),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
