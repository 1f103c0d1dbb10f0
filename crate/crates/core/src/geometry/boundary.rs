use nalgebra::DVector;
use rayon::prelude::*;

use super::{radial_boundary, ConvexSet, Point};
use crate::error::{Error, Result};
use crate::rng;

/// Points on the boundary of a convex set at a target spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample {
    pub points: Vec<Point>,
    pub resolution: f64,
}

impl BoundarySample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

const INITIAL_ANGLES: usize = 64;

/// Sample the boundary of a bounded convex set with nonempty interior.
///
/// In the plane this is a deterministic angular sweep from the Slater point,
/// subdivided until consecutive points are at most `resolution` apart. In
/// higher dimensions `max_points` seeded directions are drawn instead. Points
/// closer than `resolution / 2` to an already kept point are rejected.
pub fn sample_boundary(
    set: &dyn ConvexSet,
    resolution: f64,
    max_points: usize,
    seed: u64,
) -> Result<BoundarySample> {
    assert!(resolution > 0.0);
    let c = set.interior_point();
    let raw = if set.dim() == 2 {
        planar_sweep(set, &c, resolution, max_points)?
    } else {
        let mut rng = rng::stream(seed, 0x5a_4d_50);
        (0..max_points)
            .map(|_| radial_boundary(set, &c, &rng::unit_direction(&mut rng, set.dim())))
            .collect::<Result<Vec<_>>>()?
    };
    let min_gap = 0.5 * resolution;
    let mut points: Vec<Point> = Vec::with_capacity(raw.len());
    if set.dim() == 2 {
        for p in raw {
            let far_from_last = points.last().is_none_or(|q| (&p - q).norm() >= min_gap);
            if far_from_last {
                points.push(p);
            }
        }
        if points.len() > 2 && (&points[0] - points.last().unwrap()).norm() < min_gap {
            points.pop();
        }
    } else {
        for p in raw {
            if points.iter().all(|q| (&p - q).norm() >= min_gap) {
                points.push(p);
            }
        }
    }
    Ok(BoundarySample { points, resolution })
}

fn planar_sweep(
    set: &dyn ConvexSet,
    c: &Point,
    resolution: f64,
    max_points: usize,
) -> Result<Vec<Point>> {
    let at = |a: f64| radial_boundary(set, c, &DVector::from_column_slice(&[a.cos(), a.sin()]));
    let step = std::f64::consts::TAU / INITIAL_ANGLES as f64;
    let mut out = Vec::new();
    for i in 0..INITIAL_ANGLES {
        let (a0, a1) = (i as f64 * step, (i + 1) as f64 * step);
        let (p0, p1) = (at(a0)?, at(a1)?);
        // depth-first subdivision keeps the angular order
        let mut stack = vec![(a0, a1, p0, p1)];
        let mut segment = Vec::new();
        while let Some((a, b, pa, pb)) = stack.pop() {
            if (&pb - &pa).norm() <= resolution
                || b - a < 1e-12
                || out.len() + segment.len() >= max_points
            {
                segment.push(pa);
                continue;
            }
            let m = 0.5 * (a + b);
            let pm = at(m)?;
            stack.push((m, b, pm.clone(), pb));
            stack.push((a, m, pa, pm));
        }
        out.extend(segment);
    }
    Ok(out)
}

/// `n` boundary points: equi-angular rays in the plane, seeded rays otherwise.
pub fn boundary_grid(set: &dyn ConvexSet, n: usize, seed: u64) -> Result<Vec<Point>> {
    let c = set.interior_point();
    if set.dim() == 2 {
        (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                radial_boundary(set, &c, &DVector::from_column_slice(&[a.cos(), a.sin()]))
            })
            .collect()
    } else {
        let mut rng = rng::stream(seed, 0x6772_6964);
        (0..n)
            .map(|_| radial_boundary(set, &c, &rng::unit_direction(&mut rng, set.dim())))
            .collect()
    }
}

fn directed(a: &BoundarySample, b: &BoundarySample) -> f64 {
    a.points
        .par_iter()
        .map(|p| {
            b.points
                .iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Hausdorff distance between two boundary samples.
///
/// Accurate to within the sum of the two sample resolutions.
pub fn hausdorff_distance(a: &BoundarySample, b: &BoundarySample) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(directed(a, b).max(directed(b, a)))
}

/// Hausdorff distance between two convex bodies.
///
/// `sup_{a in A} d_B(a)` is attained on the boundary of `A` because `d_B` is
/// convex, so it suffices to scan boundary samples with the exact distance
/// oracle of the other set.
pub fn hausdorff_distance_sets(
    a: &dyn ConvexSet,
    b: &dyn ConvexSet,
    resolution: f64,
    seed: u64,
) -> Result<f64> {
    let sa = sample_boundary(a, resolution, 200_000, seed)?;
    let sb = sample_boundary(b, resolution, 200_000, seed.wrapping_add(1))?;
    if sa.is_empty() || sb.is_empty() {
        return Err(Error::EmptySample);
    }
    let sup = |s: &BoundarySample, other: &dyn ConvexSet| -> Result<f64> {
        s.points
            .iter()
            .map(|p| other.distance(p))
            .try_fold(0.0f64, |m, d| Ok(m.max(d?)))
    };
    Ok(sup(&sa, b)?.max(sup(&sb, a)?))
}
