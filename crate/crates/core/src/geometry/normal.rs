use nalgebra::DVector;

use super::{boundary_residual, ConvexSet, Point};
use crate::error::{Error, Result};
use crate::tolerances::{BOUNDARY_TOL, CORNER_SPREAD, PROBE_H};

/// Tilt of the corner-detection probes away from the estimated normal.
const PROBE_TILT: f64 = 0.1;

/// Outward unit normal of `set` at the boundary point `b`.
///
/// The normal is read off exterior probes `x = b + h*n0`: for a convex set,
/// `x - proj(x)` is normal at `proj(x)`. The seed is the ray from the Slater
/// point, then the estimate is re-probed once. Tilted probes that land on
/// different normals reveal a corner, which is reported as
/// [`Error::DegenerateNormal`] instead of picking an arbitrary normal.
pub fn outward_normal(set: &dyn ConvexSet, b: &Point) -> Result<Point> {
    let residual = boundary_residual(set, b)?;
    if residual > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual });
    }
    let seed = b - set.interior_point();
    let sn = seed.norm();
    if sn < 1e-14 {
        return Err(Error::DegenerateNormal {
            point: b.iter().copied().collect(),
            spread: f64::INFINITY,
        });
    }
    let n1 = probe(set, b, &(seed / sn))?;
    let n2 = probe(set, b, &n1)?;

    let mut spread: f64 = 0.0;
    for t in tangent_basis(&n2) {
        for sign in [-1.0, 1.0] {
            let tilted = (&n2 + &t * (sign * PROBE_TILT)).normalize();
            let nt = probe(set, b, &tilted)?;
            spread = spread.max((nt - &n2).norm());
        }
    }
    if spread > CORNER_SPREAD {
        return Err(Error::DegenerateNormal {
            point: b.iter().copied().collect(),
            spread,
        });
    }
    Ok(n2)
}

fn probe(set: &dyn ConvexSet, b: &Point, dir: &Point) -> Result<Point> {
    let x = b + dir * PROBE_H;
    let v = &x - set.project(&x)?;
    let n = v.norm();
    if n < PROBE_H * 1e-3 {
        return Err(Error::DegenerateNormal {
            point: b.iter().copied().collect(),
            spread: f64::INFINITY,
        });
    }
    Ok(v / n)
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `n`.
fn tangent_basis(n: &Point) -> Vec<Point> {
    let dim = n.len();
    let mut basis: Vec<Point> = Vec::with_capacity(dim.saturating_sub(1));
    for i in 0..dim {
        let mut e = DVector::zeros(dim);
        e[i] = 1.0;
        let mut v = &e - n * n[i];
        for u in &basis {
            v -= u * u.dot(&v);
        }
        let vn = v.norm();
        if vn > 1e-6 {
            basis.push(v / vn);
        }
        if basis.len() + 1 == dim {
            break;
        }
    }
    basis
}
