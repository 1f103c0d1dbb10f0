//! Benchmark functions with closed-form sublevel sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::QuasiconvexFunction;
use crate::error::{Error, Result};
use crate::geometry::{
    check_dim, point, Ball, BallHull, ConvexSet, MembershipSet, Point, SetRef, WholeSpace,
};
use crate::tolerances::{DOMAIN_SLACK, LEVEL_BISECTION_TOL};

/// Euclidean norm on `R^d`.
#[derive(Debug, Clone, Copy)]
pub struct Norm {
    pub dim: usize,
}

impl QuasiconvexFunction for Norm {
    fn name(&self) -> String {
        "norm".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim, x)?;
        Ok(x.norm())
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        if alpha < 0.0 {
            return Err(Error::EmptySublevel { alpha });
        }
        Ok(Arc::new(Ball::new(Point::zeros(self.dim), alpha)))
    }

    fn domain(&self) -> SetRef {
        Arc::new(WholeSpace { dim: self.dim })
    }

    fn inf_value(&self) -> f64 {
        0.0
    }
}

/// A constant function: every point is critical.
#[derive(Debug, Clone, Copy)]
pub struct Constant {
    pub dim: usize,
    pub value: f64,
}

impl QuasiconvexFunction for Constant {
    fn name(&self) -> String {
        "constant".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim, x)?;
        Ok(self.value)
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        if alpha < self.value {
            return Err(Error::EmptySublevel { alpha });
        }
        Ok(self.domain())
    }

    fn domain(&self) -> SetRef {
        Arc::new(WholeSpace { dim: self.dim })
    }

    fn inf_value(&self) -> f64 {
        self.value
    }

    fn sup_value(&self) -> f64 {
        self.value
    }
}

/// `f(x, y) = max(0, x - sqrt(1 - y^2))` on `D = co(B, (3,0) + B)`.
///
/// The sublevel `[f <= t]` is the convex hull of the unit disk and its
/// translate by `(t, 0)`; the value is `+inf` off `D`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tube;

impl Tube {
    pub const LENGTH: f64 = 3.0;

    fn hull(t: f64) -> BallHull {
        BallHull::new(point(&[0.0, 0.0]), 1.0, point(&[t, 0.0]), 1.0)
    }
}

impl QuasiconvexFunction for Tube {
    fn name(&self) -> String {
        "tube".into()
    }

    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, p: &Point) -> Result<f64> {
        check_dim(2, p)?;
        let d = Self::hull(Self::LENGTH).distance(p)?;
        if d > DOMAIN_SLACK {
            return Ok(f64::INFINITY);
        }
        let y = p[1].clamp(-1.0, 1.0);
        Ok((p[0] - (1.0 - y * y).sqrt()).clamp(0.0, Self::LENGTH))
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        if alpha < 0.0 {
            return Err(Error::EmptySublevel { alpha });
        }
        Ok(Arc::new(Self::hull(alpha.min(Self::LENGTH))))
    }

    fn domain(&self) -> SetRef {
        Arc::new(Self::hull(Self::LENGTH))
    }

    fn inf_value(&self) -> f64 {
        0.0
    }

    fn sup_value(&self) -> f64 {
        Self::LENGTH
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionMode {
    #[default]
    Analytic,
    CuttingPlane,
}

/// Gauge of the moving disks `S(s)`.
///
/// `S(s) = B(0, s)` for `s < 1` and `co(B(0, s), B((0, 2s - 1), s - 1))` for
/// `1 <= s <= 2`; `f(x) = inf { s : x in S(s) }`, `+inf` outside `S(2)`.
/// The smallest curvature radius of the boundary is `s` below 1 and `s - 1`
/// above, so prox-regularity of the complement degenerates at `s = 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Gauge {
    pub mode: ProjectionMode,
}

impl Gauge {
    pub const MAX_LEVEL: f64 = 2.0;

    pub fn with_mode(mode: ProjectionMode) -> Self {
        Self { mode }
    }

    /// `S(s)` as an analytic oracle.
    pub fn moving_disk(s: f64) -> BallHull {
        let s = s.clamp(0.0, Self::MAX_LEVEL);
        if s < 1.0 {
            BallHull::new(point(&[0.0, 0.0]), s, point(&[0.0, 0.0]), s)
        } else {
            BallHull::new(point(&[0.0, 0.0]), s, point(&[0.0, 2.0 * s - 1.0]), s - 1.0)
        }
    }

    fn in_moving_disk(s: f64, x: &Point) -> bool {
        if s < 1.0 {
            return x.norm() <= s;
        }
        let hull = Self::moving_disk(s);
        hull.contains(x)
    }
}

impl QuasiconvexFunction for Gauge {
    fn name(&self) -> String {
        "gauge".into()
    }

    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        check_dim(2, x)?;
        if !Self::in_moving_disk(Self::MAX_LEVEL, x) {
            let d = Self::moving_disk(Self::MAX_LEVEL).distance(x)?;
            if d > DOMAIN_SLACK {
                return Ok(f64::INFINITY);
            }
            return Ok(Self::MAX_LEVEL);
        }
        let (mut lo, mut hi) = (0.0, Self::MAX_LEVEL);
        while hi - lo > LEVEL_BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if Self::in_moving_disk(mid, x) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        if alpha < 0.0 {
            return Err(Error::EmptySublevel { alpha });
        }
        let s = alpha.min(Self::MAX_LEVEL);
        match self.mode {
            ProjectionMode::Analytic => Ok(Arc::new(Self::moving_disk(s))),
            ProjectionMode::CuttingPlane => {
                let membership = Arc::new(move |x: &Point| Self::in_moving_disk(s, x));
                Ok(Arc::new(MembershipSet::new(membership, point(&[0.0, 0.0]))))
            }
        }
    }

    fn domain(&self) -> SetRef {
        Arc::new(Self::moving_disk(Self::MAX_LEVEL))
    }

    fn inf_value(&self) -> f64 {
        0.0
    }

    fn sup_value(&self) -> f64 {
        Self::MAX_LEVEL
    }
}
