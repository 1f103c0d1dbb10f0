//! Projection onto a convex set known only through a membership predicate.
//!
//! Each cut bisects from the Slater point toward the current exterior
//! iterate to locate a boundary point, builds the supporting halfspace there
//! from a finite-difference normal of the Minkowski gauge, and re-projects
//! the query onto the intersection of accumulated halfspaces. That last step
//! is a least-distance program, solved exactly with Lawson–Hanson NNLS.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{check_dim, radial_extent, ConvexSet, Point, SetKind};
use crate::error::{Error, Result};
use crate::tolerances::{MAX_ITER, PROBE_H, TOL_PROJ};

pub type Membership = Arc<dyn Fn(&Point) -> bool + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuttingPlaneParams {
    pub tol: f64,
    pub max_iter: usize,
    pub probe_h: f64,
}

impl Default for CuttingPlaneParams {
    fn default() -> Self {
        Self {
            tol: TOL_PROJ,
            max_iter: MAX_ITER,
            probe_h: PROBE_H,
        }
    }
}

/// Generic convex set given by membership and a Slater point.
#[derive(Clone)]
pub struct MembershipSet {
    dim: usize,
    membership: Membership,
    slater: Point,
    params: CuttingPlaneParams,
}

impl fmt::Debug for MembershipSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipSet")
            .field("dim", &self.dim)
            .field("slater", &self.slater.as_slice())
            .finish_non_exhaustive()
    }
}

impl MembershipSet {
    pub fn new(membership: Membership, slater: Point) -> Self {
        Self {
            dim: slater.len(),
            membership,
            slater,
            params: CuttingPlaneParams::default(),
        }
    }

    pub fn with_params(mut self, params: CuttingPlaneParams) -> Self {
        self.params = params;
        self
    }
}

impl ConvexSet for MembershipSet {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, x: &Point) -> bool {
        (self.membership)(x)
    }

    fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.dim, x)?;
        generic_projection_cutting_plane(self.membership.as_ref(), &self.slater, x, self.params)
    }

    fn interior_point(&self) -> Point {
        self.slater.clone()
    }

    fn kind(&self) -> SetKind {
        SetKind::GenericCuttingPlane
    }
}

struct Predicate<'a> {
    dim: usize,
    membership: &'a (dyn Fn(&Point) -> bool + Send + Sync),
}

impl fmt::Debug for Predicate<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Predicate")
    }
}

impl ConvexSet for Predicate<'_> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn contains(&self, x: &Point) -> bool {
        (self.membership)(x)
    }
    fn project(&self, _x: &Point) -> Result<Point> {
        unreachable!("predicate wrapper is only used for radial searches")
    }
    fn interior_point(&self) -> Point {
        unreachable!()
    }
    fn kind(&self) -> SetKind {
        SetKind::GenericCuttingPlane
    }
}

/// Minkowski gauge of the set relative to `slater`: the boundary is `{gauge = 1}`.
fn gauge(set: &Predicate<'_>, slater: &Point, y: &Point) -> Result<f64> {
    let v = y - slater;
    let n = v.norm();
    if n == 0.0 {
        return Ok(0.0);
    }
    let tau = radial_extent(set, slater, &(v / n))?;
    Ok(n / tau)
}

/// Approximate metric projection using only membership and a Slater point.
pub fn generic_projection_cutting_plane(
    membership: &(dyn Fn(&Point) -> bool + Send + Sync),
    slater: &Point,
    x: &Point,
    params: CuttingPlaneParams,
) -> Result<Point> {
    if membership(x) {
        return Ok(x.clone());
    }
    let dim = x.len();
    let set = Predicate { dim, membership };
    let mut normals: Vec<Point> = Vec::new();
    let mut offsets: Vec<f64> = Vec::new();
    let mut iterate = x.clone();
    let mut last_move = f64::INFINITY;

    for _ in 0..params.max_iter {
        // (a) boundary point on the segment [slater, iterate]
        let v = &iterate - slater;
        let n = v.norm();
        let dir = v / n;
        let tau = radial_extent(&set, slater, &dir)?;
        let boundary = slater + &dir * tau;

        // (b) supporting halfspace from the gauge gradient
        let h = params.probe_h * (1.0 + boundary.norm());
        let mut grad = DVector::zeros(dim);
        for i in 0..dim {
            let mut plus = boundary.clone();
            plus[i] += h;
            let mut minus = boundary.clone();
            minus[i] -= h;
            grad[i] = (gauge(&set, slater, &plus)? - gauge(&set, slater, &minus)?) / (2.0 * h);
        }
        let gn = grad.norm();
        let normal = if gn > 1e-12 { grad / gn } else { dir.clone() };
        offsets.push(normal.dot(&boundary));
        normals.push(normal);

        // (c) project x onto the accumulated halfspaces
        let (next, multipliers) = project_onto_halfspaces(x, &normals, &offsets);
        last_move = (&next - &iterate).norm();
        iterate = next;

        // inactive cuts do not change the projection
        let keep: Vec<usize> = (0..normals.len())
            .filter(|&i| multipliers[i] > 0.0 || i + 1 == normals.len())
            .collect();
        normals = keep.iter().map(|&i| normals[i].clone()).collect();
        offsets = keep.iter().map(|&i| offsets[i]).collect();

        if membership(&iterate) {
            return Ok(iterate);
        }
        if last_move < params.tol {
            let v = &iterate - slater;
            let n = v.norm();
            let tau = radial_extent(&set, slater, &(&v / n))?;
            return Ok(slater + v * (tau / n));
        }
    }
    Err(Error::NonConvergence {
        iterations: params.max_iter,
        last_move,
    })
}

/// Projection of `x` onto `{z : <n_i, z> <= b_i}`; returns the point and the multipliers.
fn project_onto_halfspaces(x: &Point, normals: &[Point], offsets: &[f64]) -> (Point, Vec<f64>) {
    let dim = x.len();
    let m = normals.len();
    // w = z - x satisfies <-n_i, w> >= <n_i, x> - b_i
    let g = DMatrix::from_fn(m, dim, |i, j| -normals[i][j]);
    let h = DVector::from_fn(m, |i, _| normals[i].dot(x) - offsets[i]);
    match least_distance(&g, &h) {
        Some((w, u)) => (x + w, u.iter().copied().collect()),
        None => (x.clone(), vec![0.0; m]),
    }
}

/// Least-distance program `min |w|` subject to `G w >= h`.
///
/// Solved through the NNLS reformulation `min |E u - f|, u >= 0` with
/// `E = [G^T; h^T]` and `f = e_{d+1}`. Returns the minimiser and the NNLS
/// multipliers, or `None` when the constraints are infeasible.
pub fn least_distance(g: &DMatrix<f64>, h: &DVector<f64>) -> Option<(DVector<f64>, DVector<f64>)> {
    let (m, dim) = g.shape();
    if h.iter().all(|&v| v <= 0.0) {
        return Some((DVector::zeros(dim), DVector::zeros(m)));
    }
    let mut e = DMatrix::zeros(dim + 1, m);
    for i in 0..m {
        for j in 0..dim {
            e[(j, i)] = g[(i, j)];
        }
        e[(dim, i)] = h[i];
    }
    let mut f = DVector::zeros(dim + 1);
    f[dim] = 1.0;
    let u = nnls(&e, &f);
    let r = &e * &u - &f;
    if r.norm() < 1e-14 || r[dim].abs() < 1e-300 {
        return None;
    }
    let w = DVector::from_fn(dim, |j, _| -r[j] / r[dim]);
    Some((w, u))
}

/// Lawson–Hanson active-set NNLS: `min |A x - b|` over `x >= 0`.
fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    let tol = 1e-13 * a.norm().max(1.0);
    for _ in 0..(3 * n + 10) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;
        loop {
            let z = solve_passive(a, b, &passive);
            if (0..n).all(|i| !passive[i] || z[i] > 0.0) {
                x = z;
                break;
            }
            // step back toward x until a passive coordinate hits zero
            let mut alpha = f64::INFINITY;
            for i in 0..n {
                if passive[i] && z[i] <= 0.0 {
                    alpha = alpha.min(x[i] / (x[i] - z[i]));
                }
            }
            for i in 0..n {
                x[i] += alpha * (z[i] - x[i]);
                if passive[i] && x[i] <= tol {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    x
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let cols: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
    let sub = DMatrix::from_fn(a.nrows(), cols.len(), |r, c| a[(r, cols[c])]);
    let sol = sub
        .svd(true, true)
        .solve(b, 1e-14)
        .unwrap_or_else(|_| DVector::zeros(cols.len()));
    let mut z = DVector::zeros(passive.len());
    for (k, &i) in cols.iter().enumerate() {
        z[i] = sol[k];
    }
    z
}
