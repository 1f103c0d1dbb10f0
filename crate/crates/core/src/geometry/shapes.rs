use nalgebra::DVector;

use super::{check_dim, ConvexSet, Point, SetKind};
use crate::error::Result;

/// Closed Euclidean ball. A zero radius gives a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        assert!(radius >= 0.0, "ball radius must be nonnegative");
        Self { center, radius }
    }
}

impl ConvexSet for Ball {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn contains(&self, x: &Point) -> bool {
        (x - &self.center).norm() <= self.radius
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim(), x)?;
        let v = x - &self.center;
        let n = v.norm();
        if n <= self.radius {
            return Ok(x.clone());
        }
        Ok(&self.center + v * (self.radius / n))
    }

    fn distance(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim(), x)?;
        Ok(((x - &self.center).norm() - self.radius).max(0.0))
    }

    fn interior_point(&self) -> Point {
        self.center.clone()
    }

    fn kind(&self) -> SetKind {
        SetKind::Analytic
    }
}

/// The whole space, the sublevel set of a constant function.
#[derive(Debug, Clone, PartialEq)]
pub struct WholeSpace {
    pub dim: usize,
}

impl ConvexSet for WholeSpace {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, _x: &Point) -> bool {
        true
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim, x)?;
        Ok(x.clone())
    }

    fn distance(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim, x)?;
        Ok(0.0)
    }

    fn interior_point(&self) -> Point {
        DVector::zeros(self.dim)
    }

    fn kind(&self) -> SetKind {
        SetKind::Analytic
    }

    fn is_bounded(&self) -> bool {
        false
    }
}

/// Convex hull of two closed balls, `co(B(c1, r1) ∪ B(c2, r2))`.
///
/// The hull is the union of the balls `B(c(l), r(l))` with `c`, `r` affine
/// in `l ∈ [0, 1]`, so the nearest point of the hull is the nearest point of
/// the ball minimising `|x - c(l)| - r(l)`. That function is convex in `l`
/// and its stationary point has a closed form in the plane spanned by the
/// axis and `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallHull {
    c1: Point,
    r1: f64,
    c2: Point,
    r2: f64,
    shape: HullShape,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum HullShape {
    /// Ball 1 contains ball 2.
    First,
    /// Ball 2 contains ball 1.
    Second,
    /// Proper hull; `axis_len` is `|c2 - c1|`, `tan_beta` the slope of the
    /// tangent cone relative to the axis normal.
    Hull { axis_len: f64, tan_beta: f64 },
}

impl BallHull {
    pub fn new(c1: Point, r1: f64, c2: Point, r2: f64) -> Self {
        assert_eq!(c1.len(), c2.len(), "ball centers must share a dimension");
        assert!(r1 >= 0.0 && r2 >= 0.0, "radii must be nonnegative");
        let axis_len = (&c2 - &c1).norm();
        let slack = 1e-14 * (1.0 + r1.max(r2));
        let shape = if axis_len + r2 <= r1 + slack {
            HullShape::First
        } else if axis_len + r1 <= r2 + slack {
            HullShape::Second
        } else {
            let sin_beta = (r1 - r2) / axis_len;
            let tan_beta = sin_beta / (1.0 - sin_beta * sin_beta).sqrt();
            HullShape::Hull { axis_len, tan_beta }
        };
        Self {
            c1,
            r1,
            c2,
            r2,
            shape,
        }
    }

    /// Center and radius of the ball of the family nearest to `x`.
    fn nearest_ball(&self, x: &Point) -> (Point, f64) {
        match self.shape {
            HullShape::First => (self.c1.clone(), self.r1),
            HullShape::Second => (self.c2.clone(), self.r2),
            HullShape::Hull { axis_len, tan_beta } => {
                let axis = (&self.c2 - &self.c1) / axis_len;
                let rel = x - &self.c1;
                let along = rel.dot(&axis);
                let radial = (&rel - &axis * along).norm();
                let l = ((along - radial * tan_beta) / axis_len).clamp(0.0, 1.0);
                let center = &self.c1 + (&self.c2 - &self.c1) * l;
                (center, self.r1 + l * (self.r2 - self.r1))
            }
        }
    }
}

impl ConvexSet for BallHull {
    fn dim(&self) -> usize {
        self.c1.len()
    }

    fn contains(&self, x: &Point) -> bool {
        let (c, r) = self.nearest_ball(x);
        (x - c).norm() <= r
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim(), x)?;
        let (c, r) = self.nearest_ball(x);
        let v = x - &c;
        let n = v.norm();
        if n <= r {
            return Ok(x.clone());
        }
        Ok(c + v * (r / n))
    }

    fn distance(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim(), x)?;
        let (c, r) = self.nearest_ball(x);
        Ok(((x - c).norm() - r).max(0.0))
    }

    fn interior_point(&self) -> Point {
        if self.r1 >= self.r2 {
            self.c1.clone()
        } else {
            self.c2.clone()
        }
    }

    fn kind(&self) -> SetKind {
        SetKind::Analytic
    }
}
