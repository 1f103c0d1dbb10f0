use std::sync::Arc;

use super::{check_dim, ConvexSet, Point, SetKind, SetRef};
use crate::error::Result;

/// The dilation `S + eps*B` of a convex set.
#[derive(Debug, Clone)]
pub struct Dilated {
    base: SetRef,
    eps: f64,
}

impl Dilated {
    pub fn new(base: SetRef, eps: f64) -> Self {
        assert!(eps > 0.0, "dilation radius must be positive");
        Self { base, eps }
    }

    pub fn base(&self) -> &SetRef {
        &self.base
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Oracle for `S + eps*B`.
pub fn dilate(set: SetRef, eps: f64) -> SetRef {
    Arc::new(Dilated::new(set, eps))
}

impl ConvexSet for Dilated {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn contains(&self, x: &Point) -> bool {
        self.base
            .distance(x)
            .map(|d| d <= self.eps)
            .unwrap_or(false)
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim(), x)?;
        let z = self.base.project(x)?;
        let v = x - &z;
        let n = v.norm();
        if n <= self.eps {
            return Ok(x.clone());
        }
        Ok(z + v * (self.eps / n))
    }

    fn distance(&self, x: &Point) -> Result<f64> {
        Ok((self.base.distance(x)? - self.eps).max(0.0))
    }

    fn interior_point(&self) -> Point {
        self.base.interior_point()
    }

    fn kind(&self) -> SetKind {
        SetKind::Dilated
    }

    fn is_bounded(&self) -> bool {
        self.base.is_bounded()
    }
}
