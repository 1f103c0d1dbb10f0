//! Metric slope estimators and the diagnostics built on them.

use nalgebra::DVector;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::QuasiconvexFunction;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::rng;
use crate::tolerances::{
    GRID_VARIATION_WARNING, LIMITING_DELTA_F, LIMITING_RHO_OUTER, LIMITING_SAMPLES,
    SLOPE_DIRECTIONS_2D, SLOPE_DIRECTIONS_PER_DIM, SLOPE_RADII, SLOPE_SCALE_WARNING,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub value: f64,
    /// Probe radii, decreasing.
    pub radii_used: Vec<f64>,
    pub directions_per_radius: usize,
    /// Largest descent rate seen at each radius.
    pub per_radius: Vec<f64>,
    /// The two finest radii disagree by more than 20%.
    pub scale_warning: bool,
}

fn probe_directions(dim: usize, seed: u64) -> Vec<Point> {
    if dim == 2 {
        return (0..SLOPE_DIRECTIONS_2D)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / SLOPE_DIRECTIONS_2D as f64;
                DVector::from_column_slice(&[a.cos(), a.sin()])
            })
            .collect();
    }
    let mut dirs = Vec::with_capacity(SLOPE_DIRECTIONS_PER_DIM * dim + 2 * dim);
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = DVector::zeros(dim);
            e[i] = s;
            dirs.push(e);
        }
    }
    let mut r = rng::stream(seed, 0x736c_6f70);
    dirs.extend((0..SLOPE_DIRECTIONS_PER_DIM * dim).map(|_| rng::unit_direction(&mut r, dim)));
    dirs
}

/// Descent direction from central differences at scale `h`, if finite.
fn descent_direction(f: &dyn QuasiconvexFunction, x: &Point, h: f64) -> Result<Option<Point>> {
    let mut g = DVector::zeros(x.len());
    for i in 0..x.len() {
        let mut xp = x.clone();
        xp[i] += h;
        let mut xm = x.clone();
        xm[i] -= h;
        let (fp, fm) = (f.eval(&xp)?, f.eval(&xm)?);
        if !fp.is_finite() || !fm.is_finite() {
            return Ok(None);
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    let n = g.norm();
    Ok((n > 0.0).then(|| -g / n))
}

/// Estimate of the metric slope `limsup (f(x) - f(y))^+ / |x - y|`.
///
/// At each radius of the schedule the descent rate is maximized over a fixed
/// direction set plus the central-difference descent direction; the estimate
/// is the larger of the two finest radii.
pub fn slope(f: &dyn QuasiconvexFunction, x: &Point, seed: u64) -> Result<SlopeEstimate> {
    let fx = f.eval(x)?;
    if !fx.is_finite() {
        return Err(Error::OutsideDomain {
            point: x.iter().copied().collect(),
        });
    }
    let dirs = probe_directions(x.len(), seed);
    let mut per_radius = Vec::with_capacity(SLOPE_RADII.len());
    for &rho in &SLOPE_RADII {
        let mut best: f64 = 0.0;
        let extra = descent_direction(f, x, rho)?;
        for v in dirs.iter().chain(extra.iter()) {
            let fy = f.eval(&(x + v * rho))?;
            best = best.max((fx - fy) / rho);
        }
        per_radius.push(best);
    }
    let n = per_radius.len();
    let (a, b) = (per_radius[n - 2], per_radius[n - 1]);
    let value = a.max(b);
    Ok(SlopeEstimate {
        value,
        radii_used: SLOPE_RADII.to_vec(),
        directions_per_radius: dirs.len() + 1,
        per_radius,
        scale_warning: (a - b).abs() > SLOPE_SCALE_WARNING * value,
    })
}

/// Estimate of the limiting slope: the smallest slope over sampled points
/// near `x` whose values are near `f(x)`, including `x` itself.
pub fn limiting_slope(f: &dyn QuasiconvexFunction, x: &Point, seed: u64) -> Result<f64> {
    let fx = f.eval(x)?;
    if !fx.is_finite() {
        return Err(Error::OutsideDomain {
            point: x.iter().copied().collect(),
        });
    }
    let mut r = rng::stream(seed, 0x6c69_6d73);
    let mut points = vec![x.clone()];
    for _ in 0..LIMITING_SAMPLES {
        let y = rng::point_in_ball(&mut r, x, LIMITING_RHO_OUTER);
        let fy = f.eval(&y)?;
        if fy.is_finite() && (fy - fx).abs() <= LIMITING_DELTA_F {
            points.push(y);
        }
    }
    let slopes = points
        .par_iter()
        .map(|y| slope(f, y, seed).map(|s| s.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(slopes.into_iter().fold(f64::INFINITY, f64::min))
}

/// `x` is critical when its limiting slope vanishes up to `tol`.
pub fn is_critical(f: &dyn QuasiconvexFunction, x: &Point, tol: f64, seed: u64) -> Result<bool> {
    Ok(limiting_slope(f, x, seed)? <= tol)
}

/// Axis-aligned box `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl GridBox {
    pub fn new(lo: &[f64], hi: &[f64]) -> Self {
        assert_eq!(lo.len(), hi.len());
        Self {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Tensor grid with `n` nodes per axis, last axis fastest.
    pub fn grid(&self, n: usize) -> Vec<Point> {
        let d = self.dim();
        let total = n.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                let mut p = DVector::zeros(d);
                for i in (0..d).rev() {
                    let k = idx % n;
                    idx /= n;
                    let t = if n == 1 {
                        0.5
                    } else {
                        k as f64 / (n - 1) as f64
                    };
                    p[i] = self.lo[i] + t * (self.hi[i] - self.lo[i]);
                }
                p
            })
            .collect()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Point {
        rng::point_in_box(rng, &self.lo, &self.hi)
    }

    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct H2Outcome {
    pub pass: bool,
    /// Smallest slope over the grid.
    pub ell_hat: f64,
    /// Grid point attaining `ell_hat`.
    pub witness: Option<Vec<f64>>,
    /// Adjacent grid slopes vary by more than 50%.
    pub grid_warning: bool,
    pub points: usize,
}

/// Slope lower bound over a grid of `region`; points off the domain are skipped.
pub fn check_h2_region(
    f: &dyn QuasiconvexFunction,
    region: &GridBox,
    n: usize,
    min_slope: f64,
    seed: u64,
) -> Result<H2Outcome> {
    let grid = region.grid(n);
    let slopes = grid
        .par_iter()
        .map(|x| -> Result<Option<f64>> {
            if !f.eval(x)?.is_finite() {
                return Ok(None);
            }
            Ok(Some(slope(f, x, seed)?.value))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut ell_hat = f64::INFINITY;
    let mut witness = None;
    let mut points = 0;
    for (x, s) in grid.iter().zip(&slopes) {
        if let Some(s) = *s {
            points += 1;
            if s < ell_hat {
                ell_hat = s;
                witness = Some(x.iter().copied().collect());
            }
        }
    }
    if points == 0 {
        ell_hat = 0.0;
    }

    // neighbours along the fastest axis and across the previous one
    let mut grid_warning = false;
    let d = region.dim();
    let mut stride = 1;
    for _ in 0..d {
        for i in 0..grid.len() {
            let j = i + stride;
            if j >= grid.len() || (i / stride) % n == n - 1 {
                continue;
            }
            if let (Some(a), Some(b)) = (slopes[i], slopes[j]) {
                if (a - b).abs() > GRID_VARIATION_WARNING * a.max(b) {
                    grid_warning = true;
                }
            }
        }
        stride *= n;
    }

    Ok(H2Outcome {
        pass: points > 0 && ell_hat > min_slope,
        ell_hat,
        witness,
        grid_warning,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AzeCorvellecOutcome {
    pub pass: bool,
    /// Smallest value of `(f(x) - alpha)^+ / ell - d(x, [f <= alpha])`.
    pub worst_margin: f64,
    pub witness: Option<Vec<f64>>,
}

/// Checks `d(x, [f <= alpha]) <= (f(x) - alpha)^+ / ell + tol` on the given points.
pub fn aze_corvellec_check(
    f: &dyn QuasiconvexFunction,
    points: &[Point],
    alpha: f64,
    ell: f64,
    tol: f64,
) -> Result<AzeCorvellecOutcome> {
    if !(ell > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "slope lower bound must be positive, got {ell}"
        )));
    }
    let set = f.sublevel(alpha)?;
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for x in points {
        let fx = f.eval(x)?;
        if !fx.is_finite() {
            continue;
        }
        let margin = (fx - alpha).max(0.0) / ell - set.distance(x)?;
        if margin < worst {
            worst = margin;
            witness = Some(x.iter().copied().collect());
        }
    }
    Ok(AzeCorvellecOutcome {
        pass: worst >= -tol,
        worst_margin: worst,
        witness: if worst < -tol { witness } else { None },
    })
}

/// Empirical Lipschitz constant of `f` on `region` from close random pairs.
pub fn local_lipschitz(
    f: &dyn QuasiconvexFunction,
    region: &GridBox,
    n_pairs: usize,
    seed: u64,
) -> Result<f64> {
    let mut r = rng::stream(seed, 0x6c69_7073);
    let h = 1e-3 * region.diameter();
    let mut best: f64 = 0.0;
    for _ in 0..n_pairs {
        let x = region.sample(&mut r);
        let y = &x + rng::unit_direction(&mut r, x.len()) * h;
        let (fx, fy) = (f.eval(&x)?, f.eval(&y)?);
        if fx.is_finite() && fy.is_finite() {
            best = best.max((fx - fy).abs() / h);
        }
    }
    Ok(best)
}

/// Spot-check of `f(tx + (1-t)y) <= max(f(x), f(y))` on random triples.
///
/// Returns the first violating `(x, y, t)` if any.
pub fn check_quasiconvexity(
    f: &dyn QuasiconvexFunction,
    region: &GridBox,
    n: usize,
    seed: u64,
) -> Result<Option<(Point, Point, f64)>> {
    let mut r = rng::stream(seed, 0x7163_7678);
    for _ in 0..n {
        let x = region.sample(&mut r);
        let y = region.sample(&mut r);
        let t: f64 = r.random();
        let m = &x * t + &y * (1.0 - t);
        if f.eval(&m)? > f.eval(&x)?.max(f.eval(&y)?) + 1e-9 {
            return Ok(Some((x, y, t)));
        }
    }
    Ok(None)
}
