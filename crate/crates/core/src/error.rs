use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("cutting-plane projection did not converge after {iterations} cuts (last move {last_move:e})")]
    NonConvergence { iterations: usize, last_move: f64 },

    #[error("boundary sample is empty")]
    EmptySample,

    #[error("normal is not unique at boundary point {point:?} (probe disagreement {spread:e})")]
    DegenerateNormal { point: Vec<f64>, spread: f64 },

    #[error("point {point:?} lies outside the domain")]
    OutsideDomain { point: Vec<f64> },

    #[error("sublevel set at level {alpha} is empty")]
    EmptySublevel { alpha: f64 },

    #[error("set is unbounded along the probed ray")]
    Unbounded,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("final level {final_level} does not stay above inf f = {inf}")]
    LevelUnderflow { final_level: f64, inf: f64 },

    #[error("start point has value {value} above the starting level {alpha2}")]
    StartAboveLevel { value: f64, alpha2: f64 },

    #[error("point is not on the expected boundary (residual {residual:e})")]
    NotOnBoundary { residual: f64 },

    #[error("step guard violated: theta = {theta} >= 1 (increase the step count)")]
    ThetaGuard { theta: f64 },

    #[error(
        "point is outside the prox-regular reach of the complement (d_U = {d_u}, reach = {reach})"
    )]
    OutOfReach { d_u: f64, reach: f64 },

    #[error("projection direction is degenerate (|x - z| = {gap:e})")]
    DegenerateDirection { gap: f64 },

    #[error("level bisection failed: distance map is not monotone near level {alpha}")]
    BisectionFailure { alpha: f64 },

    #[error("missing diagnostic constant: {0}")]
    MissingConstants(&'static str),

    #[error("reverse sweeping needs a prox-regular complement: {0}")]
    ReverseUnavailable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::AtStep {
            step,
            source: Box::new(self),
        }
    }

    /// Step index of a failing time-stepping run, if any.
    pub fn step(&self) -> Option<usize> {
        match self {
            Error::AtStep { step, .. } => Some(*step),
            _ => None,
        }
    }
}
