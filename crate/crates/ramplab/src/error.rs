//! Crate-wide error type.

/// Errors reported by the geometry, ramp-law, transform, and dynamics modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("need at least 4 points, got {got}")]
    TooFewPoints { got: usize },

    #[error("consecutive duplicate points at index {index}")]
    DegenerateSegment { index: usize },

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("index {index} out of range for {len} samples")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("the origin has no polar angle")]
    OriginHasNoAngle,

    #[error("radius must be positive, got {r}")]
    NonpositiveRadius { r: f64 },

    #[error("position is at the origin")]
    AtOrigin,

    #[error("curve passes through the origin at sample {index}")]
    CurveThroughOrigin { index: usize },

    #[error("no sign change of F(R)*R + m*v^2 over the given interval")]
    NoBracket,

    #[error("dilation factor must be positive, got {c}")]
    NonpositiveScale { c: f64 },

    #[error("TreadmillSled crosses the vertical axis at sample {index}")]
    CrossesVerticalAxis { index: usize },

    #[error("curve is not a TreadmillSled: xi2*f - xi1' <= 0 at sample {index}")]
    NotATreadmillSled { index: usize },

    #[error("vector field is singular at the origin")]
    OriginSingular,

    #[error("operation undefined at v = 1")]
    VEqualsOne,

    #[error("phi = {phi} outside the solution domain ({lo}, {hi})")]
    PhiOutOfDomain { phi: f64, lo: f64, hi: f64 },

    #[error("t = {t} outside the curve domain ({lo}, {hi})")]
    TOutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("direction angle u = {u} outside (pi/2, 3*pi/2)")]
    UOutOfRange { u: f64 },

    #[error("trajectory entered the origin singularity at step {step}")]
    StepIntoSingularity { step: usize },

    #[error("parameter values must be strictly increasing at index {index}")]
    NonMonotoneParams { index: usize },

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("bad spec string: {0}")]
    SpecParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
