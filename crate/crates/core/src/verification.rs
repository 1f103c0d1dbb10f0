//! Property checks with concrete witnesses, bundled into a diagnostics report.
//!
//! Each check states the property it tests, passes or fails with a margin,
//! and names a witness point whenever it fails. Statements that hold for
//! "almost every" start point are reported as pass fractions over seeded
//! samples, never as verdicts.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::functions::{
    aze_corvellec_check, limiting_slope, localize, slope, FunctionRef, GridBox, QuasiconvexFunction,
};
use crate::geometry::{
    boundary_grid, hausdorff_distance, hausdorff_distance_sets, radial_extent, sample_boundary,
    ConvexSet, Point,
};
use crate::regularization::{
    prox_radius_estimate, regularize, semigroup_check, slope_inequality_check, RegularizedFunction,
};
use crate::rng;
use crate::sweeping::{
    flow_map, forward_catching_up, max_distance_increase, reverse_catching_up, SweepingConfig,
    Trajectory,
};
use crate::tolerances::CheckTolerances;

pub const TOOL: &str = "sweepdescent";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The property under test, stated in words.
    pub property: String,
    pub status: Status,
    /// Distance from the failure threshold; negative when failing.
    pub margin: Option<f64>,
    /// Points exhibiting the worst case.
    pub witness: Option<Vec<Vec<f64>>>,
    pub detail: String,
}

impl CheckRecord {
    fn new(name: &str, property: &str) -> Self {
        Self {
            name: name.into(),
            property: property.into(),
            status: Status::Skipped,
            margin: None,
            witness: None,
            detail: String::new(),
        }
    }

    fn verdict(mut self, pass: bool, margin: f64, witness: Option<Vec<Vec<f64>>>) -> Self {
        self.status = if pass { Status::Pass } else { Status::Fail };
        self.margin = margin.is_finite().then_some(margin);
        self.witness = witness;
        self
    }

    fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.detail = reason.into();
        self
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn errored(name: &str, property: &str, err: &Error) -> Self {
        Self::new(name, property)
            .verdict(false, f64::NAN, None)
            .detail(format!("numerical failure: {err}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn coords(p: &Point) -> Vec<f64> {
    p.iter().copied().collect()
}

/// Estimated constants. `None` until the producing check has run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Slope lower bound on the annulus.
    pub ell_hat: Option<f64>,
    /// Moving-map Lipschitz constant, `1 / ell_hat`.
    pub k_hat: Option<f64>,
    /// Largest sampled ratio `d_H / |t - s|`.
    pub k_hat_direct: Option<f64>,
    /// Smallest prox-regularity radius over the window.
    pub r_hat: Option<f64>,
    /// Lipschitz constant of the function along sampled trajectories.
    pub l_hat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
}

impl ReportHeader {
    pub fn new(config: &serde_json::Value, seed: u64) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            config_hash: config_hash(config),
            seed,
        }
    }

    /// One-line form used at the top of text outputs.
    pub fn comment_line(&self) -> String {
        format!(
            "# {} {} config={} seed={}",
            self.tool, self.version, self.config_hash, self.seed
        )
    }
}

/// First 16 hex digits of the SHA-256 of the compact JSON form.
pub fn config_hash(config: &serde_json::Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub header: ReportHeader,
    pub function: String,
    pub epsilon: Option<f64>,
    pub window: [f64; 2],
    pub constants: Constants,
    /// Sorted by name.
    pub checks: Vec<CheckRecord>,
    pub config: serde_json::Value,
    pub notes: Vec<String>,
}

impl DiagnosticsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }
}

// ---------------------------------------------------------------------------
// sampling helpers

/// Bounding box of a bounded convex set from radial boundary points, padded by 2%.
pub fn bounding_box(set: &dyn ConvexSet, seed: u64) -> Result<GridBox> {
    let pts = boundary_grid(set, 128, seed)?;
    let d = set.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in &pts {
        for i in 0..d {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    for i in 0..d {
        let pad = 0.02 * (hi[i] - lo[i]).max(1e-3);
        lo[i] -= pad;
        hi[i] += pad;
    }
    Ok(GridBox { lo, hi })
}

/// Seeded points with `a1 <= f <= a2`.
pub fn annulus_points(
    f: &dyn QuasiconvexFunction,
    a1: f64,
    a2: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<Point>> {
    let bbox = bounding_box(f.sublevel(a2)?.as_ref(), seed)?;
    let mut r = rng::stream(seed, 0x616e_6e75);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n && tries < 200 * n {
        tries += 1;
        let x = bbox.sample(&mut r);
        let v = f.eval(&x)?;
        if v >= a1 && v <= a2 {
            out.push(x);
        }
    }
    Ok(out)
}

/// Up to `n` points of `{f = alpha}` on the boundary of `[f <= alpha]`.
///
/// Boundary points whose value is below `alpha` sit on a face shared with
/// lower sublevels and are dropped; the survivors of a denser boundary grid
/// are thinned evenly to `n`.
pub fn level_set_points(
    f: &dyn QuasiconvexFunction,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<Point>> {
    let set = f.sublevel(alpha)?;
    let pts = boundary_grid(set.as_ref(), 16 * n.max(1), seed)?;
    let mut on_level = Vec::new();
    for p in pts {
        if (f.eval(&p)? - alpha).abs() <= 1e-6 {
            on_level.push(p);
        }
    }
    if on_level.len() <= n {
        return Ok(on_level);
    }
    let m = on_level.len();
    Ok((0..n).map(|i| on_level[i * m / n].clone()).collect())
}

/// Evenly spaced levels from `a1` to `a2` inclusive.
pub fn levels(a1: f64, a2: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![a2];
    }
    (0..n)
        .map(|i| a1 + (a2 - a1) * i as f64 / (n - 1) as f64)
        .collect()
}

// ---------------------------------------------------------------------------
// individual checks

const LIPSCHITZ_MAP: &str = "sublevel sets move at most |t - s| / ell in Hausdorff distance";
const H1: &str = "sublevel sets in the window are bounded with nonempty interior";
const H2: &str = "the slope is bounded away from zero on the annulus";
const H3: &str = "complements of the sublevel interiors are r-prox-regular with r bounded below";
const AZE: &str = "d(x, [f <= a]) <= (f(x) - a)^+ / ell on the annulus";
const STEEPEST: &str = "speed times slope equals one along sampled descent curves";

/// Hausdorff distances between sublevel sets against `|t - s| / ell`.
///
/// Returns the record and the direct estimate `max d_H / |t - s|`.
pub fn verify_moving_map_lipschitz(
    f: &dyn QuasiconvexFunction,
    level_list: &[f64],
    ell_hat: f64,
    resolution: f64,
    seed: u64,
) -> Result<(CheckRecord, Option<f64>)> {
    let rec = CheckRecord::new("moving-map-lipschitz", LIPSCHITZ_MAP);
    if !(ell_hat > 0.0) {
        return Ok((
            rec.skipped(format!(
                "refused: slope lower bound {ell_hat} is not positive"
            )),
            None,
        ));
    }
    let sets = level_list
        .iter()
        .map(|&a| f.sublevel(a))
        .collect::<Result<Vec<_>>>()?;
    let samples = sets
        .iter()
        .map(|s| sample_boundary(s.as_ref(), resolution, 1_000_000, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut k_direct: f64 = 0.0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let gap = (level_list[j] - level_list[i]).abs();
            if gap == 0.0 {
                continue;
            }
            let d_sets =
                hausdorff_distance_sets(sets[i].as_ref(), sets[j].as_ref(), resolution, seed)?;
            let d_bdry = hausdorff_distance(&samples[i], &samples[j])?;
            let d = d_sets.max(d_bdry);
            k_direct = k_direct.max(d_sets / gap);
            let margin = gap / ell_hat + 2.0 * resolution - d;
            if margin < worst {
                worst = margin;
                witness = Some(vec![vec![level_list[i], level_list[j]]]);
            }
        }
    }
    let rec = rec
        .verdict(
            worst >= 0.0,
            worst,
            if worst < 0.0 { witness } else { None },
        )
        .detail(format!(
            "{} levels, resolution {resolution}, direct ratio {k_direct:.6}",
            level_list.len()
        ));
    Ok((rec, Some(k_direct)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisOptions {
    pub levels: usize,
    pub grid: usize,
    pub prox_samples: usize,
    pub min_slope: f64,
    pub min_radius: f64,
}

/// Checks boundedness/interior, the slope bound and prox-regularity over a window.
///
/// Returns the three records plus `ell_hat` and `r_hat`.
pub fn verify_h1_h3(
    f: &dyn QuasiconvexFunction,
    window: (f64, f64),
    opts: &HypothesisOptions,
    seed: u64,
) -> Result<([CheckRecord; 3], f64, f64)> {
    let (a1, a2) = window;
    let lv = levels(a1, a2, opts.levels);

    // H1
    let mut h1 = CheckRecord::new("h1-bounded-sublevels", H1);
    let mut h1_fail: Option<(f64, String)> = None;
    let mut min_extent = f64::INFINITY;
    for &a in &lv {
        match f.sublevel(a) {
            Ok(set) => {
                let c = set.interior_point();
                let dirs = boundary_grid_dirs(set.dim(), 16, seed);
                for d in dirs {
                    match radial_extent(set.as_ref(), &c, &d) {
                        Ok(t) => min_extent = min_extent.min(t),
                        Err(Error::Unbounded) => {
                            h1_fail.get_or_insert((a, "unbounded".into()));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Err(Error::EmptySublevel { .. }) => {
                h1_fail.get_or_insert((a, "empty".into()));
            }
            Err(e) => return Err(e),
        }
    }
    if min_extent <= 1e-9 && h1_fail.is_none() {
        h1_fail = Some((f64::NAN, "no interior".into()));
    }
    h1 = match h1_fail {
        Some((a, why)) => h1
            .verdict(false, -1.0, Some(vec![vec![a]]))
            .detail(format!("sublevel at {a} is {why}")),
        None => h1.verdict(true, min_extent, None).detail(format!(
            "{} levels, smallest inner radial extent {min_extent:.6}",
            lv.len()
        )),
    };

    // H2 over a grid of the annulus
    let bbox = bounding_box(f.sublevel(a2)?.as_ref(), seed)?;
    let n = if f.dim() == 2 {
        opts.grid
    } else {
        opts.grid.min(5)
    };
    let grid: Vec<Point> = bbox
        .grid(n)
        .into_iter()
        .filter(|x| f.eval(x).map(|v| v >= a1 && v <= a2).unwrap_or(false))
        .collect();
    let slopes = grid
        .par_iter()
        .map(|x| slope(f, x, seed).map(|s| s.value))
        .collect::<Result<Vec<_>>>()?;
    let (mut ell, mut at) = (f64::INFINITY, None);
    for (x, s) in grid.iter().zip(&slopes) {
        if *s < ell {
            ell = *s;
            at = Some(coords(x));
        }
    }
    if grid.is_empty() {
        ell = 0.0;
    }
    let h2_pass = !grid.is_empty() && ell > opts.min_slope;
    let h2 = CheckRecord::new("h2-slope-bound", H2)
        .verdict(
            h2_pass,
            ell - opts.min_slope,
            at.filter(|_| !h2_pass).map(|w| vec![w]),
        )
        .detail(format!(
            "{} annulus grid points, ell_hat {ell:.6}",
            grid.len()
        ));

    // H3
    let estimates = lv
        .par_iter()
        .map(|&a| prox_radius_estimate(f, a, opts.prox_samples, seed))
        .collect::<Result<Vec<_>>>()?;
    let worst = estimates
        .iter()
        .min_by(|a, b| a.r_hat.total_cmp(&b.r_hat))
        .expect("at least one level");
    let r_hat = worst.r_hat;
    let h3_pass = r_hat >= opts.min_radius;
    let mut witness = vec![vec![worst.level]];
    if let Some((b, c)) = &worst.witness {
        witness.push(b.clone());
        witness.push(c.clone());
    }
    let h3 = CheckRecord::new("h3-prox-regularity", H3)
        .verdict(
            h3_pass,
            r_hat - opts.min_radius,
            (!h3_pass).then_some(witness),
        )
        .detail(format!(
            "r_hat {r_hat:.6} at level {:.6}, floor {}",
            worst.level, opts.min_radius
        ));
    Ok(([h1, h2, h3], ell, r_hat))
}

fn boundary_grid_dirs(dim: usize, n: usize, seed: u64) -> Vec<Point> {
    if dim == 2 {
        return (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                Point::from_column_slice(&[a.cos(), a.sin()])
            })
            .collect();
    }
    let mut r = rng::stream(seed, 0x6469_7273);
    (0..n).map(|_| rng::unit_direction(&mut r, dim)).collect()
}

/// `limiting_slope(f, z) > tol` at the base point `z` of `x`.
pub fn membership_u_epsilon(
    f: FunctionRef,
    eps: f64,
    x: &Point,
    tol: f64,
    seed: u64,
) -> Result<bool> {
    let fe = regularize(f.clone(), eps)?;
    let z = fe.base_point(x)?;
    Ok(limiting_slope(f.as_ref(), &z.point, seed)? > tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOptions {
    pub starts: usize,
    /// Starts have `f_eps` strictly inside this level range.
    pub levels: (f64, f64),
    pub steps: usize,
    pub horizon: f64,
    pub product_tol: f64,
    pub step_fraction: f64,
    pub min_fraction: f64,
    pub criticality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub record: CheckRecord,
    pub fraction: f64,
    /// Per start: the start point and its fraction of passing steps.
    pub starts: Vec<(Vec<f64>, f64)>,
}

/// Seeded starts in `U_eps` with `f_eps` strictly inside `levels`.
pub fn probe_starts(
    fe: &RegularizedFunction,
    n: usize,
    levels: (f64, f64),
    criticality: f64,
    seed: u64,
) -> Result<Vec<Point>> {
    let (lo, hi) = levels;
    let bbox = bounding_box(fe.sublevel(hi)?.as_ref(), seed)?;
    let mut r = rng::stream(seed, 0x7374_6172);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n && tries < 500 * n {
        tries += 1;
        let x = bbox.sample(&mut r);
        let v = fe.eval(&x)?;
        if !(v > lo && v < hi) {
            continue;
        }
        if membership_u_epsilon(
            fe.base().clone(),
            fe.eps(),
            &x,
            criticality,
            seed ^ tries as u64,
        )? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Runs descent curves from seeded starts and tests `speed * slope = 1` per step.
///
/// A start passes when at least `step_fraction` of its moving steps satisfy
/// `|speed * slope - 1| <= product_tol`. This is an empirical stand-in for an
/// almost-everywhere statement and says nothing about excluded starts.
pub fn probe_steepest_descent(
    fe: &RegularizedFunction,
    opts: &ProbeOptions,
    seed: u64,
) -> Result<ProbeOutcome> {
    let rec = CheckRecord::new("steepest-descent-probe", STEEPEST);
    let starts = probe_starts(fe, opts.starts, opts.levels, opts.criticality, seed)?;
    if starts.is_empty() {
        return Ok(ProbeOutcome {
            record: rec.skipped("no start points found in U_eps"),
            fraction: 0.0,
            starts: vec![],
        });
    }
    let inf = fe.inf_value();
    let per_start = starts
        .par_iter()
        .enumerate()
        .map(|(i, x0)| -> Result<f64> {
            let alpha2 = fe.eval(x0)?;
            let horizon = opts.horizon.min(0.8 * (alpha2 - inf));
            let cfg = SweepingConfig::new(alpha2, horizon, opts.steps);
            let tr = forward_catching_up(fe, x0, &cfg)?;
            let mut good = 0;
            let mut total = 0;
            for s in tr.samples.iter().skip(1) {
                if s.speed == 0.0 {
                    continue;
                }
                total += 1;
                let sl = slope(fe, &s.point(), seed.wrapping_add(i as u64))?.value;
                if (s.speed * sl - 1.0).abs() <= opts.product_tol {
                    good += 1;
                }
            }
            Ok(if total == 0 {
                0.0
            } else {
                good as f64 / total as f64
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passing = per_start
        .iter()
        .filter(|&&q| q >= opts.step_fraction)
        .count();
    let fraction = passing as f64 / starts.len() as f64;
    let pass = fraction >= opts.min_fraction;
    let worst = per_start
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| coords(&starts[i]));
    let record = rec
        .verdict(
            pass,
            fraction - opts.min_fraction,
            worst.filter(|_| !pass).map(|w| vec![w]),
        )
        .detail(format!(
            "{passing}/{} starts pass (threshold {}); empirical probe only",
            starts.len(),
            opts.min_fraction
        ));
    Ok(ProbeOutcome {
        record,
        fraction,
        starts: starts.iter().map(coords).zip(per_start).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoffmannOutcome {
    /// `d(z, [h <= beta])`.
    pub localized_distance: f64,
    /// `d(z, [f <= beta])`.
    pub base_distance: f64,
    pub factor: f64,
    pub pass: bool,
}

/// Distance bound for the localized sublevel `[f <= beta] ∩ B(center, delta)`.
///
/// Returns `None` when `d(center, [f <= beta]) >= delta`, outside the regime
/// where the bound applies.
pub fn hoffmann_localization_check(
    f: FunctionRef,
    center: &Point,
    delta: f64,
    z: &Point,
    beta: f64,
    tol: f64,
) -> Result<Option<HoffmannOutcome>> {
    let dc = f.sublevel(beta)?.distance(center)?;
    if delta - dc <= 0.0 {
        return Ok(None);
    }
    let h = localize(f.clone(), center.clone(), delta)?;
    let localized_distance = h.sublevel(beta)?.distance(z)?;
    let base_distance = f.sublevel(beta)?.distance(z)?;
    let factor = (delta + dc) / (delta - dc);
    Ok(Some(HoffmannOutcome {
        localized_distance,
        base_distance,
        factor,
        pass: localized_distance <= factor * base_distance + tol,
    }))
}

/// Minimum of `f(x - w)` over `|w| <= eps` on a polar grid, refined by zooming.
///
/// The grid includes the circle `|w| = eps`, where the minimum usually sits.
/// Each zoom re-grids three cells around the best node in `(r, angle)`.
pub fn grid_min_over_ball(
    f: &dyn QuasiconvexFunction,
    x: &Point,
    eps: f64,
    n: usize,
    zooms: usize,
) -> Result<f64> {
    assert_eq!(x.len(), 2, "grid minimization is planar");
    assert!(n >= 3, "grid needs at least three nodes per axis");
    let (mut r_lo, mut r_hi) = (0.0, eps);
    let (mut a_lo, mut a_hi) = (0.0, std::f64::consts::TAU);
    let na = 4 * n;
    let mut best = f64::INFINITY;
    for _ in 0..=zooms {
        let hr = (r_hi - r_lo) / (n - 1) as f64;
        let ha = (a_hi - a_lo) / na as f64;
        let mut arg = (r_lo, a_lo);
        for i in 0..n {
            let r = r_lo + i as f64 * hr;
            for j in 0..=na {
                let a = a_lo + j as f64 * ha;
                let w = Point::from_column_slice(&[r * a.cos(), r * a.sin()]);
                let v = f.eval(&(x - w))?;
                if v < best {
                    best = v;
                    arg = (r, a);
                }
            }
        }
        r_lo = (arg.0 - 1.5 * hr).max(0.0);
        r_hi = (arg.0 + 1.5 * hr).min(eps);
        a_lo = arg.1 - 1.5 * ha;
        a_hi = arg.1 + 1.5 * ha;
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// the full suite

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteOptions {
    /// Sublevel levels sampled for H1 and H3.
    pub levels: usize,
    /// Nodes per axis of the H2 grid.
    pub grid: usize,
    pub prox_samples: usize,
    pub hausdorff_resolution: f64,
    /// Steps of every trajectory run by the suite.
    pub steps: usize,
    pub trajectory_starts: usize,
    pub flow_pairs: usize,
    pub regularization_points: usize,
    pub probe_starts: usize,
    pub probe_steps: usize,
    pub probe_min_fraction: f64,
    /// H3 floor; for regularized functions `0.9 * eps` is used when larger.
    pub min_radius: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            levels: 11,
            grid: 15,
            prox_samples: 400,
            hausdorff_resolution: 0.01,
            steps: 200,
            trajectory_starts: 8,
            flow_pairs: 40,
            regularization_points: 20,
            probe_starts: 10,
            probe_steps: 40,
            probe_min_fraction: 0.9,
            min_radius: None,
        }
    }
}

struct Suite<'a> {
    f: &'a dyn QuasiconvexFunction,
    regularized: Option<&'a RegularizedFunction>,
    window: (f64, f64),
    tol: &'a CheckTolerances,
    opts: &'a SuiteOptions,
    seed: u64,
    checks: Vec<CheckRecord>,
    constants: Constants,
}

/// Runs every applicable check for `f` (or `f_eps`) over the level window.
///
/// Consumers are refused, not run, when a prerequisite failed: anything that
/// needs the slope bound waits on H2, reverse sweeping and the flow bounds
/// wait on H3.
pub fn run_suite(
    base: FunctionRef,
    epsilon: Option<f64>,
    window: (f64, f64),
    tol: &CheckTolerances,
    opts: &SuiteOptions,
    seed: u64,
    config: serde_json::Value,
) -> Result<DiagnosticsReport> {
    if !(window.0 < window.1) {
        return Err(Error::InvalidConfig(format!(
            "level window must satisfy a1 < a2, got {}:{}",
            window.0, window.1
        )));
    }
    let regularized = match epsilon {
        Some(eps) => Some(regularize(base.clone(), eps)?),
        None => None,
    };
    let f: &dyn QuasiconvexFunction = match &regularized {
        Some(fe) => fe,
        None => base.as_ref(),
    };
    if window.0 <= f.inf_value() || window.1 >= f.sup_value() {
        return Err(Error::InvalidConfig(format!(
            "level window {}:{} must lie inside ({}, {})",
            window.0,
            window.1,
            f.inf_value(),
            f.sup_value()
        )));
    }
    let mut suite = Suite {
        f,
        regularized: regularized.as_ref(),
        window,
        tol,
        opts,
        seed,
        checks: Vec::new(),
        constants: Constants::default(),
    };
    suite.run()?;
    let mut checks = suite.checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(DiagnosticsReport {
        header: ReportHeader::new(&config, seed),
        function: f.name(),
        epsilon,
        window: [window.0, window.1],
        constants: suite.constants,
        checks,
        config,
        notes: vec![
            "Statements about almost every start point are reported as pass fractions over seeded samples.".into(),
            "Trajectories avoiding null sets cannot be observed numerically and have no check.".into(),
        ],
    })
}

impl Suite<'_> {
    fn run(&mut self) -> Result<()> {
        let (a1, a2) = self.window;
        let min_radius = match (self.opts.min_radius, self.regularized) {
            (Some(r), _) => r,
            (None, Some(fe)) => (0.9 * fe.eps()).max(self.tol.h3_min_radius),
            (None, None) => self.tol.h3_min_radius,
        };
        let hopts = HypothesisOptions {
            levels: self.opts.levels,
            grid: self.opts.grid,
            prox_samples: self.opts.prox_samples,
            min_slope: self.tol.h2_min_slope,
            min_radius,
        };
        let ([h1, h2, h3], ell, r_hat) = verify_h1_h3(self.f, self.window, &hopts, self.seed)?;
        let h2_ok = h2.passed();
        let h3_ok = h1.passed() && h3.passed();
        self.checks.extend([h1, h2, h3]);
        self.constants.ell_hat = Some(ell);
        self.constants.r_hat = Some(r_hat);
        if h2_ok {
            self.constants.k_hat = Some(1.0 / ell);
        }

        // moving map
        let lv = levels(a1, a2, 3);
        let (rec, k_direct) = verify_moving_map_lipschitz(
            self.f,
            &lv,
            if h2_ok { ell } else { 0.0 },
            self.opts.hausdorff_resolution,
            self.seed,
        )?;
        self.checks.push(rec);
        self.constants.k_hat_direct = k_direct;
        let sanity = CheckRecord::new(
            "constants-sanity",
            "the direct moving-map estimate does not exceed 1 / ell",
        );
        self.checks.push(match (k_direct, self.constants.k_hat) {
            (Some(kd), Some(k)) => {
                let bound = k * (1.0 + self.tol.constants_sanity)
                    + 2.0 * self.opts.hausdorff_resolution / (lv[1] - lv[0]);
                sanity
                    .verdict(
                        kd <= bound,
                        bound - kd,
                        (kd > bound).then(|| vec![vec![kd, k]]),
                    )
                    .detail(format!("direct {kd:.6}, 1/ell {k:.6}"))
            }
            _ => sanity.skipped("refused: needs a positive slope bound"),
        });

        // distance bound on the annulus
        let aze = CheckRecord::new("aze-corvellec", AZE);
        self.checks.push(if h2_ok {
            let pts = annulus_points(self.f, a1, a2, 200, self.seed)?;
            let out = aze_corvellec_check(self.f, &pts, a1, ell, self.tol.aze_corvellec)?;
            aze.verdict(out.pass, out.worst_margin, out.witness.map(|w| vec![w]))
                .detail(format!("{} annulus points at level {a1}", pts.len()))
        } else {
            aze.skipped("refused: needs a positive slope bound")
        });

        self.trajectory_checks()?;
        if let Some(fe) = self.regularized {
            self.regularization_checks(fe)?;
            if h3_ok && h2_ok {
                self.reverse_checks(fe)?;
            } else {
                for (name, prop) in [
                    (
                        "reverse-recovery",
                        "reverse sweeping returns forward endpoints to their start",
                    ),
                    (
                        "flow-bilipschitz",
                        "D <= (L + exp(K T / r)) |u1 - u2| on sampled pairs",
                    ),
                ] {
                    self.checks.push(
                        CheckRecord::new(name, prop)
                            .skipped("refused: prerequisite H2 or H3 failed"),
                    );
                }
            }
            self.probe(fe)?;
        }
        Ok(())
    }

    fn starts(&self) -> Result<Vec<Point>> {
        level_set_points(
            self.f,
            self.window.1,
            self.opts.trajectory_starts,
            self.seed,
        )
    }

    fn trajectory_checks(&mut self) -> Result<()> {
        let (a1, a2) = self.window;
        let cfg = SweepingConfig::new(a2, a2 - a1, self.opts.steps);
        let starts = self.starts()?;
        let runs: Vec<Result<Trajectory>> = starts
            .par_iter()
            .map(|m| forward_catching_up(self.f, m, &cfg))
            .collect();
        let mut decay = (0.0f64, None);
        let mut riding = (0.0f64, None);
        let mut trajs = Vec::new();
        for (m, r) in starts.iter().zip(runs) {
            match r {
                Ok(t) => {
                    let v = t.value_decay_residual();
                    if v > decay.0 {
                        decay = (v, Some(coords(m)));
                    }
                    let b = t.boundary_riding_residual();
                    if b > riding.0 {
                        riding = (b, Some(coords(m)));
                    }
                    trajs.push(t);
                }
                Err(e) => {
                    self.checks.push(CheckRecord::errored(
                        "value-decay",
                        "f(u(t)) = a2 - t after the waiting phase",
                        &e,
                    ));
                    return Ok(());
                }
            }
        }
        let t = self.tol;
        self.checks.push(
            CheckRecord::new("value-decay", "f(u(t)) = a2 - t after the waiting phase")
                .verdict(
                    decay.0 <= t.value_decay,
                    t.value_decay - decay.0,
                    decay.1.filter(|_| decay.0 > t.value_decay).map(|w| vec![w]),
                )
                .detail(format!(
                    "{} trajectories, max residual {:.3e}",
                    trajs.len(),
                    decay.0
                )),
        );
        self.checks.push(
            CheckRecord::new(
                "boundary-riding",
                "u(t) stays on the boundary of the moving set",
            )
            .verdict(
                riding.0 <= t.boundary_riding,
                t.boundary_riding - riding.0,
                riding
                    .1
                    .filter(|_| riding.0 > t.boundary_riding)
                    .map(|w| vec![w]),
            )
            .detail(format!("max residual {:.3e}", riding.0)),
        );
        let mut worst = (f64::NEG_INFINITY, None);
        for i in 0..trajs.len() {
            for j in i + 1..trajs.len() {
                let inc = max_distance_increase(&trajs[i], &trajs[j]);
                if inc > worst.0 {
                    worst = (inc, Some(vec![coords(&starts[i]), coords(&starts[j])]));
                }
            }
        }
        let ok = worst.0 <= t.nonexpansive_slack;
        self.checks.push(
            CheckRecord::new(
                "forward-nonexpansive",
                "distances between forward trajectories never increase",
            )
            .verdict(
                ok,
                t.nonexpansive_slack - worst.0.max(0.0),
                worst.1.filter(|_| !ok),
            )
            .detail(format!(
                "largest one-step increase {:.3e}",
                worst.0.max(0.0)
            )),
        );
        Ok(())
    }

    fn regularization_checks(&mut self, fe: &RegularizedFunction) -> Result<()> {
        let (a1, a2) = self.window;
        let t = self.tol;
        let pts = annulus_points(
            fe,
            a1,
            a2,
            self.opts.regularization_points,
            self.seed ^ 0x5eed,
        )?;
        let base = fe.base().clone();
        let eps = fe.eps();

        let mut grid_worst = (0.0f64, None);
        let mut bp_worst = (0.0f64, None);
        let mut sg_worst = (0.0f64, None);
        let mut sl_worst = (f64::INFINITY, None);
        for (i, x) in pts.iter().enumerate() {
            let v = fe.eval(x)?;
            if x.len() == 2 {
                let g = grid_min_over_ball(base.as_ref(), x, eps, 21, 4)?;
                let e = (g - v).abs();
                if e > grid_worst.0 {
                    grid_worst = (e, Some(coords(x)));
                }
            }
            let z = fe.base_point(x)?;
            let e = (base.eval(&z.point)? - v)
                .abs()
                .max(((x - &z.point).norm() - eps).max(0.0));
            if e > bp_worst.0 {
                bp_worst = (e, Some(coords(x)));
            }
            let sg = semigroup_check(base.clone(), 0.5 * eps, 0.5 * eps, x, t.semigroup)?;
            let e = (sg.combined - sg.nested).abs();
            if e > sg_worst.0 {
                sg_worst = (e, Some(coords(x)));
            }
            let si = slope_inequality_check(
                base.clone(),
                eps,
                x,
                t.slope_inequality,
                self.seed + i as u64,
            )?;
            let m = si.regularized_slope - si.base_slope + t.slope_inequality;
            if m < sl_worst.0 {
                sl_worst = (m, Some(coords(x)));
            }
        }
        let n = pts.len();
        let mut push = |name: &str, prop: &str, worst: (f64, Option<Vec<f64>>), limit: f64| {
            let ok = worst.0 <= limit;
            self.checks.push(
                CheckRecord::new(name, prop)
                    .verdict(
                        ok,
                        limit - worst.0,
                        worst.1.filter(|_| !ok).map(|w| vec![w]),
                    )
                    .detail(format!("{n} points, worst {:.3e}", worst.0)),
            );
        };
        if fe.dim() == 2 {
            push(
                "regularization-grid",
                "bisection value matches the minimum of f over the eps-ball",
                grid_worst,
                t.regularization_grid,
            );
        }
        push(
            "base-point",
            "f(z) = f_eps(x) and |x - z| <= eps at the base point",
            bp_worst,
            t.base_point,
        );
        push(
            "semigroup",
            "regularizing by e1 then e2 equals regularizing by e1 + e2",
            sg_worst,
            t.semigroup,
        );
        let ok = sl_worst.0 >= 0.0;
        self.checks.push(
            CheckRecord::new(
                "slope-inequality",
                "slope of f_eps at x is at least the slope of f at the base point",
            )
            .verdict(ok, sl_worst.0, sl_worst.1.filter(|_| !ok).map(|w| vec![w]))
            .detail(format!("{n} points")),
        );
        Ok(())
    }

    fn reverse_checks(&mut self, fe: &RegularizedFunction) -> Result<()> {
        let (a1, a2) = self.window;
        let horizon = a2 - a1;
        let k_hat = self.constants.k_hat.expect("H2 passed");
        let r_hat = fe.eps();
        let starts = self.starts()?;

        // forward then reverse over half the window, at k and 2k
        let t_bar = 0.5 * horizon;
        let mut worst: (f64, f64, Option<Vec<f64>>) = (0.0, 0.0, None);
        for m in &starts {
            let mut errs = [0.0; 2];
            for (slot, k) in [self.opts.steps, 2 * self.opts.steps]
                .into_iter()
                .enumerate()
            {
                let cfg = SweepingConfig::new(a2, t_bar, k).with_constants(k_hat, r_hat);
                let fw = forward_catching_up(fe, m, &cfg)?;
                let rv = reverse_catching_up(fe, &fw.endpoint(), t_bar, &cfg)?;
                errs[slot] = (rv.endpoint() - m).norm();
            }
            if errs[0] >= worst.0 {
                worst = (errs[0], errs[1], Some(coords(m)));
            }
        }
        let (e1, e2, w) = worst;
        let ratio_ok = e2 <= 0.75 * e1 || e2 <= 1e-12;
        let ok = e2 <= 1e-2 && ratio_ok;
        self.checks.push(
            CheckRecord::new(
                "reverse-recovery",
                "reverse sweeping returns forward endpoints to their start",
            )
            .verdict(ok, 1e-2 - e2, w.filter(|_| !ok).map(|w| vec![w]))
            .detail(format!(
                "errors {e1:.3e} at k={}, {e2:.3e} at 2k",
                self.opts.steps
            )),
        );

        // bi-Lipschitz bound on seeded pairs
        let cfg = SweepingConfig::new(a2, horizon, self.opts.steps).with_constants(k_hat, r_hat);
        let grid = level_set_points(fe, a2, 4 * self.opts.trajectory_starts, self.seed)?;
        let flow = flow_map(fe, &grid, &cfg);
        let trajs: Vec<&Trajectory> = flow
            .trajectories
            .iter()
            .filter_map(|t| t.as_ref().ok())
            .collect();
        let mut l_hat: f64 = 0.0;
        for tr in &trajs {
            for s in tr.samples.iter().step_by((self.opts.steps / 10).max(1)) {
                l_hat = l_hat.max(slope(fe, &s.point(), self.seed)?.value);
            }
        }
        self.constants.l_hat = Some(l_hat);
        let factor = l_hat + (k_hat * horizon / r_hat).exp();
        let mut r = rng::stream(self.seed, 0x6269_6c69);
        let mut worst = (f64::INFINITY, None);
        for _ in 0..self.opts.flow_pairs {
            if trajs.len() < 2 {
                break;
            }
            let i = r.random_range(0..trajs.len());
            let j = r.random_range(0..trajs.len());
            let t1 = r.random_range(0.0..=horizon);
            let t2 = r.random_range(0.0..=horizon);
            let d_in = (t1 - t2).abs() + (trajs[i].start() - trajs[j].start()).norm();
            let (u1, u2) = (trajs[i].at(t1), trajs[j].at(t2));
            let bound = factor * (&u1 - &u2).norm() * (1.0 + self.tol.bilipschitz_slack);
            let m = bound - d_in;
            if m < worst.0 {
                worst = (
                    m,
                    Some(vec![
                        coords(&trajs[i].start()),
                        vec![t1],
                        coords(&trajs[j].start()),
                        vec![t2],
                    ]),
                );
            }
        }
        let ok = worst.0 >= 0.0;
        self.checks.push(
            CheckRecord::new(
                "flow-bilipschitz",
                "D <= (L + exp(K T / r)) |u1 - u2| on sampled pairs",
            )
            .verdict(ok, worst.0, worst.1.filter(|_| !ok))
            .detail(format!(
                "{} pairs over {} trajectories, L_hat {l_hat:.4}, factor {factor:.4}",
                self.opts.flow_pairs,
                trajs.len()
            )),
        );
        Ok(())
    }

    fn probe(&mut self, fe: &RegularizedFunction) -> Result<()> {
        let (a1, a2) = self.window;
        let opts = ProbeOptions {
            starts: self.opts.probe_starts,
            levels: (a1, a2),
            steps: self.opts.probe_steps,
            horizon: a2 - a1,
            product_tol: self.tol.steepest_product,
            step_fraction: self.tol.steepest_step_fraction,
            min_fraction: self.opts.probe_min_fraction,
            criticality: self.tol.criticality,
        };
        let out = probe_steepest_descent(fe, &opts, self.seed)?;
        self.checks.push(out.record);
        Ok(())
    }
}
