//! Numerical tolerances shared across the crate.
//!
//! Every threshold used by projections, estimators and checks lives here so
//! that reports can echo them and tests can pin them.

use serde::{Deserialize, Serialize};

/// Convergence tolerance of iterative projections.
pub const TOL_PROJ: f64 = 1e-9;

/// Points within this distance of a set count as on its boundary.
pub const BOUNDARY_TOL: f64 = 1e-7;

/// Iteration cap of the cutting-plane and Dykstra projections.
pub const MAX_ITER: usize = 10_000;

/// Exterior probe length for finite-difference normals.
pub const PROBE_H: f64 = 1e-5;

/// Width at which level bisections stop.
pub const LEVEL_BISECTION_TOL: f64 = 1e-10;

/// Slack for membership tests on points produced by floating-point projection.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Angular spread above which probe normals signal a corner.
pub const CORNER_SPREAD: f64 = 1e-2;

/// Radii schedule of the slope estimator, decreasing.
pub const SLOPE_RADII: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// Number of sampled directions for the slope estimator in the plane.
pub const SLOPE_DIRECTIONS_2D: usize = 64;

/// Directions per dimension for the slope estimator when `d >= 3`.
pub const SLOPE_DIRECTIONS_PER_DIM: usize = 32;

/// Relative disagreement between the two finest radii that flags an estimate.
pub const SLOPE_SCALE_WARNING: f64 = 0.2;

/// Neighbourhood radius of the limiting-slope estimator.
pub const LIMITING_RHO_OUTER: f64 = 1e-2;

/// Value window of the limiting-slope estimator.
pub const LIMITING_DELTA_F: f64 = 1e-2;

/// Sample count of the limiting-slope estimator.
pub const LIMITING_SAMPLES: usize = 128;

/// Relative variation between adjacent grid slopes that flags a coarse grid.
pub const GRID_VARIATION_WARNING: f64 = 0.5;

/// Tunable tolerances of the verification harness, echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckTolerances {
    pub value_decay: f64,
    pub boundary_riding: f64,
    pub nonexpansive_slack: f64,
    pub regularization_grid: f64,
    pub base_point: f64,
    pub semigroup: f64,
    pub slope_inequality: f64,
    pub criticality: f64,
    pub bilipschitz_slack: f64,
    pub steepest_product: f64,
    pub steepest_step_fraction: f64,
    pub h2_min_slope: f64,
    pub h3_min_radius: f64,
    pub aze_corvellec: f64,
    pub hoffmann: f64,
    pub constants_sanity: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self {
            value_decay: 1e-6,
            boundary_riding: 1e-6,
            nonexpansive_slack: 1e-8,
            regularization_grid: 1e-3,
            base_point: 1e-6,
            semigroup: 1e-6,
            slope_inequality: 1e-3,
            criticality: 1e-2,
            bilipschitz_slack: 0.05,
            steepest_product: 5e-2,
            steepest_step_fraction: 0.95,
            h2_min_slope: 1e-6,
            h3_min_radius: 0.05,
            aze_corvellec: 1e-6,
            hoffmann: 1e-6,
            constants_sanity: 0.05,
        }
    }
}
