//! Catching-up discretization of the sublevel sweeping process.
//!
//! The forward process follows the shrinking sets `S(t) = [f <= alpha2 - t]`:
//! each step projects the previous point onto the next set. The reverse
//! process runs on a regularized function and follows the complements of the
//! growing sets backwards in time, which is well posed only while every
//! point stays inside the reach of the complement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::QuasiconvexFunction;
use crate::geometry::{boundary_residual, check_dim, Point};
use crate::regularization::RegularizedFunction;
use crate::tolerances::{BOUNDARY_TOL, LEVEL_BISECTION_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepingConfig {
    /// Starting level.
    pub alpha2: f64,
    /// Horizon `T`; the final level is `alpha2 - T`.
    pub horizon: f64,
    /// Number of uniform steps `k`.
    pub steps: usize,
    /// Lipschitz constant of the moving sets, needed by reverse runs.
    #[serde(default)]
    pub k_hat: Option<f64>,
    /// Reach of the complements; defaults to `eps` for regularized functions.
    #[serde(default)]
    pub r_hat: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl SweepingConfig {
    pub fn new(alpha2: f64, horizon: f64, steps: usize) -> Self {
        Self {
            alpha2,
            horizon,
            steps,
            k_hat: None,
            r_hat: None,
            seed: 0,
        }
    }

    pub fn with_constants(mut self, k_hat: f64, r_hat: f64) -> Self {
        self.k_hat = Some(k_hat);
        self.r_hat = Some(r_hat);
        self
    }

    /// `theta = K (span / k) / r`; reverse runs need `theta < 1`.
    pub fn theta(&self, span: f64, k_hat: f64, r_hat: f64) -> f64 {
        k_hat * (span / self.steps as f64) / r_hat
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidConfig("step count must be at least 1".into()));
        }
        if !(self.horizon >= 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "horizon must be a nonnegative number, got {}",
                self.horizon
            )));
        }
        if !self.alpha2.is_finite() {
            return Err(Error::InvalidConfig("starting level must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub step: usize,
    pub t: f64,
    pub level: f64,
    pub x: Vec<f64>,
    pub f: f64,
    /// `|u_j - u_{j-1}| / dt`, zero at the first sample.
    pub speed: f64,
    /// Upper bound on the distance to the boundary of the current set.
    pub dist_to_boundary: f64,
}

impl TrajectorySample {
    pub fn point(&self) -> Point {
        Point::from_column_slice(&self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub direction: Direction,
    pub config: SweepingConfig,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn start(&self) -> Point {
        self.samples[0].point()
    }

    pub fn endpoint(&self) -> Point {
        self.samples
            .last()
            .expect("trajectories are never empty")
            .point()
    }

    pub fn max_speed(&self) -> f64 {
        self.samples.iter().map(|s| s.speed).fold(0.0, f64::max)
    }

    /// Position at time `t` by linear interpolation, clamped to the time span.
    pub fn at(&self, t: f64) -> Point {
        let s = &self.samples;
        if s.len() == 1 || t <= s[0].t {
            return s[0].point();
        }
        if t >= s[s.len() - 1].t {
            return s[s.len() - 1].point();
        }
        let j = s.partition_point(|p| p.t <= t);
        let (a, b) = (&s[j - 1], &s[j]);
        let w = (t - a.t) / (b.t - a.t);
        a.point() * (1.0 - w) + b.point() * w
    }

    /// Index of the first sample that moved away from the start.
    pub fn waiting_steps(&self) -> usize {
        let x0 = &self.samples[0].x;
        self.samples.iter().take_while(|s| &s.x == x0).count()
    }

    /// `max |f(u_j) - level_j|` over samples after the waiting phase.
    pub fn value_decay_residual(&self) -> f64 {
        self.samples
            .iter()
            .skip(self.waiting_steps())
            .map(|s| (s.f - s.level).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with columns `step,t,level,x0..x{d-1},f,speed,dist_to_boundary`,
    /// preceded by `comment` when it is nonempty.
    pub fn to_csv(&self, comment: &str) -> String {
        let d = self.samples[0].x.len();
        let mut out = String::new();
        if !comment.is_empty() {
            out.push_str(comment);
            out.push('\n');
        }
        out.push_str("step,t,level");
        for i in 0..d {
            out.push_str(&format!(",x{i}"));
        }
        out.push_str(",f,speed,dist_to_boundary\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{}", s.step, s.t, s.level));
            for v in &s.x {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(",{},{},{}\n", s.f, s.speed, s.dist_to_boundary));
        }
        out
    }

    /// Largest boundary residual after the waiting phase.
    pub fn boundary_riding_residual(&self) -> f64 {
        self.samples
            .iter()
            .skip(self.waiting_steps())
            .map(|s| s.dist_to_boundary)
            .fold(0.0, f64::max)
    }
}

fn sample(
    f: &dyn QuasiconvexFunction,
    step: usize,
    t: f64,
    level: f64,
    x: &Point,
    prev: Option<&Point>,
    dt: f64,
) -> Result<TrajectorySample> {
    let speed = match prev {
        Some(p) if dt > 0.0 => (x - p).norm() / dt,
        _ => 0.0,
    };
    let set = f.sublevel(level)?;
    Ok(TrajectorySample {
        step,
        t,
        level,
        x: x.iter().copied().collect(),
        f: f.eval(x)?,
        speed,
        dist_to_boundary: boundary_residual(set.as_ref(), x)?,
    })
}

/// Forward catching-up: `u_j = proj(u_{j-1}; [f <= alpha2 - jT/k])`.
///
/// While the level is still above `f(x0)` the point waits at `x0` exactly.
pub fn forward_catching_up(
    f: &dyn QuasiconvexFunction,
    x0: &Point,
    cfg: &SweepingConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_dim(f.dim(), x0)?;
    let final_level = cfg.alpha2 - cfg.horizon;
    let inf = f.inf_value();
    if final_level <= inf {
        return Err(Error::LevelUnderflow { final_level, inf });
    }
    let f0 = f.eval(x0)?;
    // values found by level bisection may overshoot by the bisection width
    if f0 > cfg.alpha2 + 10.0 * LEVEL_BISECTION_TOL {
        return Err(Error::StartAboveLevel {
            value: f0,
            alpha2: cfg.alpha2,
        });
    }
    let k = cfg.steps;
    let dt = cfg.horizon / k as f64;
    let mut samples = vec![sample(f, 0, 0.0, cfg.alpha2, x0, None, dt)?];
    if cfg.horizon == 0.0 {
        return Ok(Trajectory {
            direction: Direction::Forward,
            config: cfg.clone(),
            samples,
        });
    }
    let mut u = x0.clone();
    for j in 1..=k {
        let s = cfg.horizon * j as f64 / k as f64;
        let level = cfg.alpha2 - s;
        let prev = u.clone();
        if level < f0 {
            u = f
                .sublevel(level)
                .and_then(|set| set.project(&prev))
                .map_err(|e| e.at_step(j))?;
        }
        samples.push(sample(f, j, s, level, &u, Some(&prev), dt).map_err(|e| e.at_step(j))?);
    }
    Ok(Trajectory {
        direction: Direction::Forward,
        config: cfg.clone(),
        samples,
    })
}

/// Reverse catching-up from `u_bar` on `[f_eps <= alpha2 - t_bar]` up to level `alpha2`.
///
/// Steps project onto the complement of the interior of the next, larger
/// sublevel. Refused when `theta = K (t_bar / k) / r >= 1`.
pub fn reverse_catching_up(
    fe: &RegularizedFunction,
    u_bar: &Point,
    t_bar: f64,
    cfg: &SweepingConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_dim(fe.dim(), u_bar)?;
    if !(t_bar >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "reverse span must be nonnegative, got {t_bar}"
        )));
    }
    let k_hat = cfg
        .k_hat
        .ok_or(Error::MissingConstants("moving-map Lipschitz constant K"))?;
    let r_hat = cfg.r_hat.unwrap_or(fe.eps());
    let theta = cfg.theta(t_bar, k_hat, r_hat);
    if theta >= 1.0 {
        return Err(Error::ThetaGuard { theta });
    }
    let start_level = cfg.alpha2 - t_bar;
    let residual = boundary_residual(fe.sublevel(start_level)?.as_ref(), u_bar)?;
    if residual > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual });
    }

    let k = cfg.steps;
    let dt = t_bar / k as f64;
    let mut samples = vec![sample(fe, 0, -t_bar, start_level, u_bar, None, dt)?];
    if t_bar == 0.0 {
        return Ok(Trajectory {
            direction: Direction::Reverse,
            config: cfg.clone(),
            samples,
        });
    }
    let mut v = u_bar.clone();
    for j in 1..=k {
        let s = -t_bar + t_bar * j as f64 / k as f64;
        let level = cfg.alpha2 + s;
        let prev = v.clone();
        v = fe
            .complement_projection(level, &prev)
            .map_err(|e| e.at_step(j))?;
        samples.push(sample(fe, j, s, level, &v, Some(&prev), dt).map_err(|e| e.at_step(j))?);
    }
    Ok(Trajectory {
        direction: Direction::Reverse,
        config: cfg.clone(),
        samples,
    })
}

/// Forward trajectories from every point of a boundary grid.
#[derive(Debug, Clone)]
pub struct FlowMap {
    pub grid: Vec<Point>,
    pub trajectories: Vec<Result<Trajectory>>,
}

impl FlowMap {
    /// `u(t_j, m_i)`, if trajectory `i` succeeded.
    pub fn point(&self, t_index: usize, m_index: usize) -> Option<Point> {
        let tr = self.trajectories.get(m_index)?.as_ref().ok()?;
        tr.samples.get(t_index).map(|s| s.point())
    }

    pub fn endpoints(&self) -> Vec<Option<Point>> {
        self.trajectories
            .iter()
            .map(|t| t.as_ref().ok().map(|t| t.endpoint()))
            .collect()
    }

    /// Smallest distance between endpoints of two successful trajectories.
    pub fn min_endpoint_separation(&self) -> f64 {
        let ends: Vec<Point> = self.endpoints().into_iter().flatten().collect();
        let mut best = f64::INFINITY;
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                best = best.min((&ends[i] - &ends[j]).norm());
            }
        }
        best
    }
}

/// Runs `forward_catching_up` from each grid point in parallel.
///
/// Failures are kept per trajectory; grid points off the boundary of
/// `[f <= alpha2]` fail with `NotOnBoundary`.
pub fn flow_map(f: &dyn QuasiconvexFunction, grid: &[Point], cfg: &SweepingConfig) -> FlowMap {
    let trajectories = grid
        .par_iter()
        .map(|m| {
            let set = f.sublevel(cfg.alpha2)?;
            let residual = boundary_residual(set.as_ref(), m)?;
            if residual > BOUNDARY_TOL {
                return Err(Error::NotOnBoundary { residual });
            }
            forward_catching_up(f, m, cfg)
        })
        .collect();
    FlowMap {
        grid: grid.to_vec(),
        trajectories,
    }
}

/// Distances `|a_j - b_j|` between two runs on the same grid.
pub fn distance_profile(a: &Trajectory, b: &Trajectory) -> Vec<f64> {
    a.samples
        .iter()
        .zip(&b.samples)
        .map(|(p, q)| (p.point() - q.point()).norm())
        .collect()
}

/// Largest one-step increase of the distance between two runs.
pub fn max_distance_increase(a: &Trajectory, b: &Trajectory) -> f64 {
    distance_profile(a, b)
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest one-step expansion factor `d_j / d_{j-1}` between two runs.
pub fn max_expansion_ratio(a: &Trajectory, b: &Trajectory) -> f64 {
    distance_profile(a, b)
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| w[1] / w[0])
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowInversionRecord {
    /// `D = |t1 - t2| + |m1 - m2|`.
    pub d_in: f64,
    /// `|u(t1, m1) - u(t2, m2)|`.
    pub dist_out: f64,
    /// `(L + exp(K T / r)) * dist_out * (1 + slack)`.
    pub bound: f64,
    pub bilipschitz: bool,
    /// Largest `|u(t, m1) - u(t, m2)| - |m1 - m2|` over the grid.
    pub max_forward_excess: f64,
    pub nonexpansive: bool,
}

/// Checks the inverse Lipschitz bound of the flow map at two points.
#[allow(clippy::too_many_arguments)]
pub fn invert_flow_check(
    fe: &RegularizedFunction,
    m1: &Point,
    m2: &Point,
    t1: f64,
    t2: f64,
    cfg: &SweepingConfig,
    l_hat: Option<f64>,
    slack: f64,
    tol: f64,
) -> Result<FlowInversionRecord> {
    let l_hat = l_hat.ok_or(Error::MissingConstants("function Lipschitz constant L"))?;
    let k_hat = cfg
        .k_hat
        .ok_or(Error::MissingConstants("moving-map Lipschitz constant K"))?;
    let r_hat = cfg.r_hat.unwrap_or(fe.eps());
    let a = forward_catching_up(fe, m1, cfg)?;
    let b = if m1 == m2 {
        a.clone()
    } else {
        forward_catching_up(fe, m2, cfg)?
    };
    let d_in = (t1 - t2).abs() + (m1 - m2).norm();
    let dist_out = (a.at(t1) - b.at(t2)).norm();
    let factor = l_hat + (k_hat * cfg.horizon / r_hat).exp();
    let bound = factor * dist_out * (1.0 + slack);
    let gap = (m1 - m2).norm();
    let max_forward_excess = distance_profile(&a, &b)
        .into_iter()
        .map(|d| d - gap)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(FlowInversionRecord {
        d_in,
        dist_out,
        bound,
        bilipschitz: d_in <= bound,
        max_forward_excess,
        nonexpansive: max_forward_excess <= tol,
    })
}
