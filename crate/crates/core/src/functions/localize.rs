use std::sync::Arc;

use super::{FunctionRef, QuasiconvexFunction};
use crate::error::{Error, Result};
use crate::geometry::{boundary_grid, check_dim, Ball, BallSection, Point, SetRef};
use crate::tolerances::{DOMAIN_SLACK, LEVEL_BISECTION_TOL};

/// `h = f + I_{B(center, delta)}`: the restriction of `f` to a closed ball.
#[derive(Debug, Clone)]
pub struct Localized {
    base: FunctionRef,
    ball: Ball,
    inf: f64,
    sup: f64,
}

/// Restrict `f` to the closed ball `B(center, delta)`, which must lie in `dom f`.
pub fn localize(base: FunctionRef, center: Point, delta: f64) -> Result<Localized> {
    check_dim(base.dim(), &center)?;
    if !(delta > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "localization radius must be positive, got {delta}"
        )));
    }
    let ball = Ball::new(center, delta);

    // smallest level whose sublevel reaches the ball
    let mut hi = base.eval(&ball.center)?;
    if !hi.is_finite() {
        return Err(Error::OutsideDomain {
            point: ball.center.iter().copied().collect(),
        });
    }
    let mut lo = base.inf_value();
    let reaches = |alpha: f64| -> Result<bool> {
        match base.sublevel(alpha) {
            Ok(s) => Ok(s.distance(&ball.center)? <= delta),
            Err(Error::EmptySublevel { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    if lo.is_finite() && reaches(lo)? {
        hi = lo;
    } else {
        if !lo.is_finite() {
            lo = hi - 1.0;
            while reaches(lo)? {
                lo = hi - 2.0 * (hi - lo);
            }
        }
        while hi - lo > LEVEL_BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if reaches(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    let sup = if base.dim() == 2 {
        let mut sup = f64::NEG_INFINITY;
        for b in boundary_grid(&ball, 720, 0)? {
            sup = sup.max(base.eval(&b)?);
        }
        sup
    } else {
        base.sup_value()
    };
    Ok(Localized {
        base,
        ball,
        inf: hi,
        sup,
    })
}

impl Localized {
    pub fn center(&self) -> &Point {
        &self.ball.center
    }

    pub fn delta(&self) -> f64 {
        self.ball.radius
    }

    pub fn base(&self) -> &FunctionRef {
        &self.base
    }
}

impl QuasiconvexFunction for Localized {
    fn name(&self) -> String {
        let c: Vec<String> = self.ball.center.iter().map(|v| v.to_string()).collect();
        format!(
            "localized:{}:{}:{}",
            self.base.name(),
            c.join(","),
            self.ball.radius
        )
    }

    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim(), x)?;
        if (x - &self.ball.center).norm() > self.ball.radius + DOMAIN_SLACK {
            return Ok(f64::INFINITY);
        }
        self.base.eval(x)
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        if alpha < self.inf {
            return Err(Error::EmptySublevel { alpha });
        }
        let set = self.base.sublevel(alpha)?;
        let c = &self.ball.center;
        let delta = self.ball.radius;
        let p = set.project(c)?;
        let d = (&p - c).norm();
        if d > delta + DOMAIN_SLACK {
            return Err(Error::EmptySublevel { alpha });
        }
        if d >= delta - 1e-12 {
            // the ball only touches the sublevel
            return Ok(Arc::new(Ball::new(p, 0.0)));
        }
        // pull the touching point towards the interior of the sublevel
        // until it sits well inside the ball
        let inner = set.interior_point();
        let target = 0.5 * (delta + d);
        let mut lambda: f64 = 1.0;
        let slater = loop {
            let z = &p * (1.0 - lambda) + &inner * lambda;
            if (&z - c).norm() <= target || lambda < 1e-12 {
                break z;
            }
            lambda *= 0.5;
        };
        Ok(Arc::new(BallSection::new(set, self.ball.clone(), slater)))
    }

    fn domain(&self) -> SetRef {
        Arc::new(self.ball.clone())
    }

    fn inf_value(&self) -> f64 {
        self.inf
    }

    fn sup_value(&self) -> f64 {
        self.sup
    }
}
