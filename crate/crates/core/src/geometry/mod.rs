//! Oracle-based convex set primitives.
//!
//! A [`ConvexSet`] answers membership, metric projection and distance
//! queries. Concrete sets are either analytic (balls, hulls of two balls),
//! dilations `S + eps*B` of another oracle, intersections, or generic sets
//! known only through a membership predicate and a Slater point.

mod boundary;
mod cutting_plane;
mod dilate;
mod intersection;
mod normal;
mod shapes;

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::DOMAIN_SLACK;

pub use boundary::{
    boundary_grid, hausdorff_distance, hausdorff_distance_sets, sample_boundary, BoundarySample,
};
pub use cutting_plane::{
    generic_projection_cutting_plane, least_distance, CuttingPlaneParams, MembershipSet,
};
pub use dilate::{dilate, Dilated};
pub use intersection::{BallSection, Intersection};
pub use normal::outward_normal;
pub use shapes::{Ball, BallHull, WholeSpace};

/// A point of the ambient space.
pub type Point = DVector<f64>;

/// Build a point from its coordinates.
pub fn point(coords: &[f64]) -> Point {
    DVector::from_column_slice(coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Analytic,
    GenericCuttingPlane,
    Dilated,
    Intersection,
}

/// Queryable handle for a nonempty closed convex set.
pub trait ConvexSet: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    fn contains(&self, x: &Point) -> bool;

    /// Metric projection. Points of the set are returned unchanged.
    fn project(&self, x: &Point) -> Result<Point>;

    fn distance(&self, x: &Point) -> Result<f64> {
        Ok((x - self.project(x)?).norm())
    }

    /// A point of the interior (Slater point).
    fn interior_point(&self) -> Point;

    fn kind(&self) -> SetKind;

    fn is_bounded(&self) -> bool {
        true
    }
}

pub type SetRef = Arc<dyn ConvexSet>;

/// Metric projection of `x` onto `set`.
pub fn project_convex(set: &dyn ConvexSet, x: &Point) -> Result<Point> {
    check_dim(set.dim(), x)?;
    set.project(x)
}

pub(crate) fn check_dim(expected: usize, x: &Point) -> Result<()> {
    if x.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: x.len(),
        });
    }
    Ok(())
}

/// Membership that tolerates floating-point spill from projections.
pub fn contains_with_slack(set: &dyn ConvexSet, x: &Point) -> bool {
    set.contains(x) || set.distance(x).map(|d| d <= DOMAIN_SLACK).unwrap_or(false)
}

/// Last point of `set` on the ray `from + tau * dir`, `tau >= 0`.
///
/// `from` must lie in the set. The result is inside the set and within
/// about `1e-15` relative of the boundary.
pub fn radial_boundary(set: &dyn ConvexSet, from: &Point, dir: &Point) -> Result<Point> {
    let tau = radial_extent(set, from, dir)?;
    Ok(from + dir * tau)
}

pub(crate) fn radial_extent(set: &dyn ConvexSet, from: &Point, dir: &Point) -> Result<f64> {
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while set.contains(&(from + dir * hi)) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::Unbounded);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if set.contains(&(from + dir * mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Upper bound on the distance from `x` to the boundary of `set`.
///
/// Exterior points report their exact distance. Interior points report the
/// radial gap to the boundary along the ray from the Slater point, which
/// dominates the true distance to the boundary.
pub fn boundary_residual(set: &dyn ConvexSet, x: &Point) -> Result<f64> {
    let d = set.distance(x)?;
    if d > 0.0 || !set.contains(x) {
        return Ok(d);
    }
    let c = set.interior_point();
    let v = x - &c;
    let n = v.norm();
    if n < 1e-14 {
        // x is the Slater point itself; fall back to any coordinate ray
        let mut e = DVector::zeros(x.len());
        e[0] = 1.0;
        let b = radial_boundary(set, &c, &e)?;
        return Ok((b - x).norm());
    }
    let b = radial_boundary(set, &c, &(v / n))?;
    Ok((b - x).norm())
}
