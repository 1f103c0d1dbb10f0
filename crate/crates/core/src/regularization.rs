//! Max-convolution regularization `f_eps` of a quasiconvex function.
//!
//! `f_eps` is the function whose sublevel sets are `[f <= alpha] + eps*B`.
//! Equivalently `f_eps(x) = inf { f(x - w) : |w| <= eps }`, and the value at
//! `x` is the smallest level whose sublevel set comes within `eps` of `x`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{slope, FunctionRef, QuasiconvexFunction};
use crate::geometry::{
    check_dim, dilate, outward_normal, sample_boundary, ConvexSet, Point, SetRef,
};
use crate::tolerances::{LEVEL_BISECTION_TOL, TOL_PROJ};

#[derive(Debug, Clone)]
pub struct RegularizedFunction {
    base: FunctionRef,
    eps: f64,
}

/// Wrap `f` so that every sublevel set is dilated by `eps`.
pub fn regularize(base: FunctionRef, eps: f64) -> Result<RegularizedFunction> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    Ok(RegularizedFunction { base, eps })
}

/// Nearest point of the base sublevel at the regularized value.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePoint {
    pub point: Point,
    pub level: f64,
    /// The level is the infimum, so the base set may be larger than a level set.
    pub at_infimum: bool,
}

impl RegularizedFunction {
    pub fn base(&self) -> &FunctionRef {
        &self.base
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `d(x, [f <= alpha])`, infinite when the sublevel is empty.
    fn base_distance(&self, alpha: f64, x: &Point) -> Result<f64> {
        match self.base.sublevel(alpha) {
            Ok(s) => s.distance(x),
            Err(Error::EmptySublevel { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    }

    /// `f_eps(x)` by bisection on `alpha` for `d(x, [f <= alpha]) = eps`.
    pub fn eval_regularized(&self, x: &Point) -> Result<f64> {
        check_dim(self.base.dim(), x)?;
        let eps = self.eps;
        let inf = self.base.inf_value();

        let fx = self.base.eval(x)?;
        let mut hi = if fx.is_finite() {
            fx
        } else {
            let dom = self.base.domain();
            let z = dom.project(x)?;
            if (x - &z).norm() > eps {
                return Ok(f64::INFINITY);
            }
            let fz = self.base.eval(&z)?;
            if fz.is_finite() {
                fz
            } else {
                self.base.sup_value()
            }
        };
        // the infimum may itself be a bisection estimate slightly above f(x)
        if inf.is_finite() {
            hi = hi.max(inf);
        }
        let mut g_hi = self.base_distance(hi, x)?;
        // points at distance exactly eps from the domain land here with roundoff
        if g_hi > eps * (1.0 + 1e-12) {
            return Err(Error::BisectionFailure { alpha: hi });
        }

        let (mut lo, mut g_lo) = if inf.is_finite() {
            if self.base.attains_inf() {
                let g = self.base_distance(inf, x)?;
                if g <= eps {
                    return Ok(inf);
                }
                (inf, g)
            } else {
                (inf, f64::INFINITY)
            }
        } else {
            let mut step = 1.0;
            loop {
                let lo = hi - step;
                let g = self.base_distance(lo, x)?;
                if g > eps {
                    break (lo, g);
                }
                step *= 2.0;
                if step > 1e300 {
                    return Ok(f64::NEG_INFINITY);
                }
            }
        };

        while hi - lo > LEVEL_BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            let g = self.base_distance(mid, x)?;
            let slack = 1e-9 * (1.0 + g_hi);
            if g + slack < g_hi || g > g_lo + slack {
                return Err(Error::BisectionFailure { alpha: mid });
            }
            if g <= eps {
                hi = mid;
                g_hi = g;
            } else {
                lo = mid;
                g_lo = g;
            }
        }
        Ok(hi)
    }

    /// `z = proj(x; [f <= f_eps(x)])`.
    pub fn base_point(&self, x: &Point) -> Result<BasePoint> {
        let level = self.eval_regularized(x)?;
        if !level.is_finite() {
            return Err(Error::OutsideDomain {
                point: x.iter().copied().collect(),
            });
        }
        let point = self.base.sublevel(level)?.project(x)?;
        Ok(BasePoint {
            point,
            level,
            at_infimum: level <= self.base.inf_value() + LEVEL_BISECTION_TOL,
        })
    }

    /// Nearest point of the complement of `int [f_eps <= alpha]`.
    ///
    /// With `z = proj(x; [f <= alpha])` the answer is `z + eps (x - z)/|x - z|`,
    /// unique as long as `x` stays off the base set, i.e. inside the reach of
    /// the complement.
    pub fn complement_projection(&self, alpha: f64, x: &Point) -> Result<Point> {
        check_dim(self.base.dim(), x)?;
        let set = self.base.sublevel(alpha)?;
        let z = set.project(x)?;
        let gap = (x - &z).norm();
        if gap >= self.eps {
            return Ok(x.clone());
        }
        if gap == 0.0 {
            return Err(Error::OutOfReach {
                d_u: self.eps,
                reach: self.eps,
            });
        }
        if gap < TOL_PROJ {
            return Err(Error::DegenerateDirection { gap });
        }
        Ok(&z + (x - &z) * (self.eps / gap))
    }
}

impl QuasiconvexFunction for RegularizedFunction {
    fn name(&self) -> String {
        format!("regularize({},{})", self.base.name(), self.eps)
    }

    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        self.eval_regularized(x)
    }

    fn sublevel(&self, alpha: f64) -> Result<SetRef> {
        Ok(dilate(self.base.sublevel(alpha)?, self.eps))
    }

    fn domain(&self) -> SetRef {
        dilate(self.base.domain(), self.eps)
    }

    fn inf_value(&self) -> f64 {
        self.base.inf_value()
    }

    fn sup_value(&self) -> f64 {
        self.base.sup_value()
    }

    fn attains_inf(&self) -> bool {
        self.base.attains_inf()
    }
}

/// Both sides of `f_{e1+e2} = (f_{e1})_{e2}` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemigroupOutcome {
    pub combined: f64,
    pub nested: f64,
    pub pass: bool,
}

pub fn semigroup_check(
    f: FunctionRef,
    e1: f64,
    e2: f64,
    x: &Point,
    tol: f64,
) -> Result<SemigroupOutcome> {
    let combined = regularize(f.clone(), e1 + e2)?.eval(x)?;
    let nested = regularize(Arc::new(regularize(f, e1)?), e2)?.eval(x)?;
    let pass = combined == nested || (combined - nested).abs() <= tol;
    Ok(SemigroupOutcome {
        combined,
        nested,
        pass,
    })
}

/// `slope(f_eps, x)` against `slope(f, z)` at the base point `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeInequalityOutcome {
    pub regularized_slope: f64,
    pub base_slope: f64,
    pub base_point: Vec<f64>,
    pub pass: bool,
}

pub fn slope_inequality_check(
    f: FunctionRef,
    eps: f64,
    x: &Point,
    tol: f64,
    seed: u64,
) -> Result<SlopeInequalityOutcome> {
    let fe = regularize(f.clone(), eps)?;
    let z = fe.base_point(x)?;
    let regularized_slope = slope(&fe, x, seed)?.value;
    let base_slope = slope(f.as_ref(), &z.point, seed)?.value;
    Ok(SlopeInequalityOutcome {
        regularized_slope,
        base_slope,
        base_point: z.point.iter().copied().collect(),
        pass: regularized_slope >= base_slope - tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProxRadiusEstimate {
    pub level: f64,
    /// Estimated reach of the closed complement of `int [f <= level]`.
    pub r_hat: f64,
    pub sample_count: usize,
    /// Boundary samples dropped because their normal is not unique.
    pub skipped: usize,
    pub resolution: f64,
    /// Boundary pair attaining `r_hat`.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

/// Prox-regularity radius of the complement of `int [f <= alpha]`.
pub fn prox_radius_estimate(
    f: &dyn QuasiconvexFunction,
    alpha: f64,
    n_samples: usize,
    seed: u64,
) -> Result<ProxRadiusEstimate> {
    let set = f.sublevel(alpha)?;
    let mut est = prox_radius_of_set(set.as_ref(), n_samples, seed)?;
    est.level = alpha;
    Ok(est)
}

/// Reach of the complement of a convex body from boundary pairs.
///
/// For boundary points `b, b'` with outward normal `n(b)` the interior ball
/// of radius `r` at `b` excludes `b'` iff `r <= |b - b'|^2 / (2 <n(b), b - b'>)`,
/// so the minimum of that ratio over pairs estimates the reach. The ratio is
/// exact on circular arcs. A coarse pass fixes the scale, then the boundary is
/// resampled at spacing `r_hat / 20`.
pub fn prox_radius_of_set(
    set: &dyn ConvexSet,
    n_samples: usize,
    seed: u64,
) -> Result<ProxRadiusEstimate> {
    let coarse_res = if set.dim() == 2 {
        perimeter_2d(set)? / n_samples.max(8) as f64
    } else {
        1e-9
    };
    let coarse = pairwise_reach(set, coarse_res, n_samples, seed)?;
    if set.dim() != 2 || !coarse.r_hat.is_finite() {
        return Ok(coarse);
    }
    let fine_res = coarse_res.min(coarse.r_hat / 20.0);
    if fine_res >= coarse_res {
        return Ok(coarse);
    }
    let cap = (perimeter_2d(set)? / fine_res * 4.0) as usize + 64;
    pairwise_reach(set, fine_res, cap, seed)
}

fn perimeter_2d(set: &dyn ConvexSet) -> Result<f64> {
    let pts = crate::geometry::boundary_grid(set, 256, 0)?;
    let mut len = 0.0;
    for i in 0..pts.len() {
        len += (&pts[(i + 1) % pts.len()] - &pts[i]).norm();
    }
    Ok(len)
}

fn pairwise_reach(
    set: &dyn ConvexSet,
    resolution: f64,
    max_points: usize,
    seed: u64,
) -> Result<ProxRadiusEstimate> {
    let sample = sample_boundary(set, resolution, max_points, seed)?;
    let normals: Vec<Option<Point>> = sample
        .points
        .par_iter()
        .map(|b| match outward_normal(set, b) {
            Ok(n) => Ok(Some(n)),
            Err(Error::DegenerateNormal { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let skipped = normals.iter().filter(|n| n.is_none()).count();
    let kept: Vec<(Vec<f64>, Vec<f64>)> = sample
        .points
        .iter()
        .zip(&normals)
        .filter_map(|(b, n)| {
            n.as_ref()
                .map(|n| (b.iter().copied().collect(), n.iter().copied().collect()))
        })
        .collect();

    let best = (0..kept.len())
        .into_par_iter()
        .map(|i| {
            let (b, n) = &kept[i];
            let mut best = (f64::INFINITY, i, i);
            for (j, (c, _)) in kept.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut sq = 0.0;
                let mut dot = 0.0;
                for k in 0..b.len() {
                    let d = b[k] - c[k];
                    sq += d * d;
                    dot += n[k] * d;
                }
                if dot > 1e-14 * sq.sqrt() {
                    let r = sq / (2.0 * dot);
                    if r < best.0 {
                        best = (r, i, j);
                    }
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, 0, 0),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
                    b
                } else {
                    a
                }
            },
        );

    let witness = best
        .0
        .is_finite()
        .then(|| (kept[best.1].0.clone(), kept[best.2].0.clone()));
    Ok(ProxRadiusEstimate {
        level: f64::NAN,
        r_hat: best.0,
        sample_count: kept.len(),
        skipped,
        resolution,
        witness,
    })
}
