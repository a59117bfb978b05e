use thiserror::Error;

/// Errors raised by the exact-arithmetic, schedule and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty set has no diameter")]
    EmptyDiameter,
    #[error("interior is empty")]
    EmptyInterior,
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvertedInterval { lo: String, hi: String },
    #[error("affine map slope must be nonzero")]
    ZeroSlope,
    #[error("{0}")]
    Domain(String),
    #[error("point outside dynamical core")]
    OutsideCore,
    #[error("schedule index exceeds feasibility cap: {0}")]
    CapExceeded(String),
    #[error("closed form valid only for the built-in schedule")]
    ClosedFormCustom,
    #[error("invalid subset description: {0}")]
    InvalidSubset(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
