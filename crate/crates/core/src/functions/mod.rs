//! Quasiconvex functions given through their sublevel sets.

mod gallery;
mod localize;
mod slope;

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::geometry::{Point, SetRef};

pub use gallery::{Constant, Gauge, Norm, ProjectionMode, Tube};
pub use localize::{localize, Localized};
pub use slope::{
    aze_corvellec_check, check_h2_region, check_quasiconvexity, is_critical, limiting_slope,
    local_lipschitz, slope, AzeCorvellecOutcome, GridBox, H2Outcome, SlopeEstimate,
};

/// An extended-valued function whose sublevel sets are convex.
pub trait QuasiconvexFunction: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn dim(&self) -> usize;

    /// `f(x)`, or `+inf` outside the domain.
    fn eval(&self, x: &Point) -> Result<f64>;

    /// Oracle for `[f <= alpha]`; `EmptySublevel` below the infimum.
    fn sublevel(&self, alpha: f64) -> Result<SetRef>;

    fn domain(&self) -> SetRef;

    /// Greatest lower bound of `f`.
    fn inf_value(&self) -> f64;

    /// Least upper bound of `f` over its domain.
    fn sup_value(&self) -> f64 {
        f64::INFINITY
    }

    /// Whether the infimum is attained (the sublevel at `inf_value` exists).
    fn attains_inf(&self) -> bool {
        true
    }
}

pub type FunctionRef = Arc<dyn QuasiconvexFunction>;
