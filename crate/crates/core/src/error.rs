use thiserror::Error;

/// Errors raised by the geometry, estimation and scenario layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("vector has non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("vector norm {norm} does not match sphere radius {radius}")]
    NotOnSphere { norm: f64, radius: f64 },

    #[error("points lie on spheres of different radius ({0} vs {1})")]
    RadiusMismatch(f64, f64),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not draw a non-degenerate sample after {0} attempts")]
    DegenerateSample(usize),

    #[error(
        "effective sample size {ess:.1} is below the required {required:.1}; \
         increase the number of posterior samples"
    )]
    LowEffectiveSampleSize { ess: f64, required: f64 },

    #[error("1D identity violated: measure {measure} vs |x - y| = {expected}")]
    IdentityViolation { measure: f64, expected: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    ok: bool,
    range: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
