use super::{check_dim, Ball, ConvexSet, Point, SetKind, SetRef};
use crate::error::{Error, Result};
use crate::tolerances::{MAX_ITER, TOL_PROJ};

/// Intersection of two convex sets, projected with Dykstra's algorithm.
///
/// Plain alternating projections only find *some* point of the
/// intersection; the Dykstra correction terms make the limit the nearest one.
#[derive(Debug, Clone)]
pub struct Intersection {
    first: SetRef,
    second: SetRef,
    slater: Point,
}

impl Intersection {
    /// `slater` must be an interior point of both sets.
    pub fn new(first: SetRef, second: SetRef, slater: Point) -> Self {
        assert_eq!(first.dim(), second.dim());
        Self {
            first,
            second,
            slater,
        }
    }
}

impl ConvexSet for Intersection {
    fn dim(&self) -> usize {
        self.first.dim()
    }

    fn contains(&self, x: &Point) -> bool {
        self.first.contains(x) && self.second.contains(x)
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim(), x)?;
        if self.contains(x) {
            return Ok(x.clone());
        }
        let mut cur = x.clone();
        let mut p = Point::zeros(x.len());
        let mut q = Point::zeros(x.len());
        let mut last_move = f64::INFINITY;
        for _ in 0..MAX_ITER {
            let y = self.first.project(&(&cur + &p))?;
            p = &cur + &p - &y;
            let next = self.second.project(&(&y + &q))?;
            q = &y + &q - &next;
            last_move = (&next - &cur).norm();
            let gap = (&next - &y).norm();
            cur = next;
            if last_move < 0.1 * TOL_PROJ && gap < TOL_PROJ {
                return Ok(cur);
            }
        }
        Err(Error::NonConvergence {
            iterations: MAX_ITER,
            last_move,
        })
    }

    fn interior_point(&self) -> Point {
        self.slater.clone()
    }

    fn kind(&self) -> SetKind {
        SetKind::Intersection
    }

    fn is_bounded(&self) -> bool {
        self.first.is_bounded() || self.second.is_bounded()
    }
}

/// Intersection of a convex set with a closed ball.
///
/// The projection of `x` is `proj_C((1 - t) x + t c)` for the multiplier
/// `t` in `[0, 1]` at which it reaches the sphere, found by bisection. Each
/// probe is an exact projection onto `C`, so thin slivers where the
/// alternating schemes crawl cost the same as any other query.
#[derive(Debug, Clone)]
pub struct BallSection {
    set: SetRef,
    ball: Ball,
    slater: Point,
}

impl BallSection {
    /// `slater` must be an interior point of both sets.
    pub fn new(set: SetRef, ball: Ball, slater: Point) -> Self {
        assert_eq!(set.dim(), ball.center.len());
        Self { set, ball, slater }
    }

    fn in_ball(&self, p: &Point) -> bool {
        (p - &self.ball.center).norm() <= self.ball.radius
    }
}

impl ConvexSet for BallSection {
    fn dim(&self) -> usize {
        self.set.dim()
    }

    fn contains(&self, x: &Point) -> bool {
        self.in_ball(x) && self.set.contains(x)
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim(), x)?;
        if self.contains(x) {
            return Ok(x.clone());
        }
        let c = &self.ball.center;
        let p = self.set.project(x)?;
        if self.in_ball(&p) {
            return Ok(p);
        }
        let mut hi_point = self.set.project(c)?;
        if !self.in_ball(&hi_point) {
            return Err(Error::NonConvergence {
                iterations: 0,
                last_move: (&hi_point - c).norm() - self.ball.radius,
            });
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > 1e-15 {
            let mid = 0.5 * (lo + hi);
            let q = self.set.project(&(x * (1.0 - mid) + c * mid))?;
            if self.in_ball(&q) {
                hi = mid;
                hi_point = q;
            } else {
                lo = mid;
            }
        }
        Ok(hi_point)
    }

    fn interior_point(&self) -> Point {
        self.slater.clone()
    }

    fn kind(&self) -> SetKind {
        SetKind::Intersection
    }
}
