//! Command-line experiment runner behind the `sweepdescent` binary.
//!
//! Every subcommand resolves one [`ExperimentConfig`] from an optional JSON
//! file and flags (flags win), fills in all defaults, and echoes the result
//! next to its outputs so the run can be repeated with `--config`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::functions::{
    localize, Constant, FunctionRef, Gauge, Norm, ProjectionMode, QuasiconvexFunction, Tube,
};
use crate::geometry::{boundary_grid, Point};
use crate::regularization::{regularize, RegularizedFunction};
use crate::sweeping::{flow_map, forward_catching_up, reverse_catching_up, SweepingConfig};
use crate::tolerances::CheckTolerances;
use crate::verification::{
    bounding_box, levels, run_suite, verify_moving_map_lipschitz, ReportHeader, Status,
    SuiteOptions,
};

#[derive(Debug, Parser)]
#[command(
    name = "sweepdescent",
    version,
    about = "Descent curves of quasiconvex functions by sweeping sublevel sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward (and optionally reverse) catching-up from one start point.
    Descend(RunArgs),
    /// Run the diagnostics suite and write a JSON report.
    Verify(RunArgs),
    /// Trajectories from a boundary grid of the top sublevel set.
    Foliate(RunArgs),
    /// List the benchmark functions.
    Gallery,
    /// Table of regularized values and base points.
    Regularize(RunArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON config file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// norm, tube, gauge, constant:<v> or localized:<base>:<c1,c2,..>:<delta>.
    #[arg(long)]
    pub function: Option<String>,
    /// Ambient dimension for norm and constant.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum)]
    pub projection: Option<ProjectionArg>,
    /// Regularization radius.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Level window `a1:a2`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<[f64; 2]>,
    /// Starting level.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<f64>,
    /// Horizon: the final level is alpha2 - T.
    #[arg(long = "T", alias = "horizon")]
    pub horizon: Option<f64>,
    /// Number of steps.
    #[arg(long = "k", alias = "steps")]
    pub steps: Option<usize>,
    /// Start point, comma separated.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    pub x0: Option<Coords>,
    /// Boundary grid size (foliate) or nodes per axis (regularize).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Evaluation point for regularize; repeatable.
    #[arg(long = "at", value_parser = parse_coords, allow_hyphen_values = true)]
    pub points: Vec<Coords>,
    /// Also run the reverse process back from the endpoint.
    #[arg(long)]
    pub reverse: bool,
    /// Lipschitz constant of the moving sets for reverse runs.
    #[arg(long)]
    pub k_hat: Option<f64>,
    /// Reach of the complements for reverse runs.
    #[arg(long)]
    pub r_hat: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum ProjectionArg {
    Analytic,
    CuttingPlane,
}

/// Comma-separated coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords(pub Vec<f64>);

fn parse_coords(s: &str) -> Result<Coords, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Coords)
}

fn parse_window(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("expected a1:a2, got {s:?}"));
    }
    let a = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok([a, b])
}

/// Full description of a run. Unknown keys are rejected.
///
/// `output_dir` is read but never echoed, so moving the outputs does not
/// change the config hash.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub function: String,
    pub dim: usize,
    pub projection: ProjectionMode,
    pub epsilon: Option<f64>,
    pub window: Option<[f64; 2]>,
    pub alpha2: Option<f64>,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub steps: usize,
    pub x0: Option<Vec<f64>>,
    pub grid: usize,
    pub points: Vec<Vec<f64>>,
    pub reverse: bool,
    pub k_hat: Option<f64>,
    pub r_hat: Option<f64>,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub output_dir: PathBuf,
    pub tolerances: CheckTolerances,
    pub suite: SuiteOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            function: "norm".into(),
            dim: 2,
            projection: ProjectionMode::Analytic,
            epsilon: None,
            window: None,
            alpha2: None,
            horizon: 1.0,
            steps: 1000,
            x0: None,
            grid: 16,
            points: Vec::new(),
            reverse: false,
            k_hat: None,
            r_hat: None,
            seed: 0,
            output_dir: PathBuf::from("sweepdescent-out"),
            tolerances: CheckTolerances::default(),
            suite: SuiteOptions::default(),
        }
    }
}

impl ExperimentConfig {
    /// Config file (if any) overridden by flags.
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let mut cfg = match &args.config {
            Some(path) => Self::from_file(path)?,
            None => Self::default(),
        };
        if let Some(v) = &args.function {
            cfg.function = v.clone();
        }
        if let Some(v) = args.dim {
            cfg.dim = v;
        }
        if let Some(v) = args.projection {
            cfg.projection = match v {
                ProjectionArg::Analytic => ProjectionMode::Analytic,
                ProjectionArg::CuttingPlane => ProjectionMode::CuttingPlane,
            };
        }
        if args.epsilon.is_some() {
            cfg.epsilon = args.epsilon;
        }
        if args.window.is_some() {
            cfg.window = args.window;
        }
        if args.alpha2.is_some() {
            cfg.alpha2 = args.alpha2;
        }
        if let Some(v) = args.horizon {
            cfg.horizon = v;
        }
        if let Some(v) = args.steps {
            cfg.steps = v;
        }
        if let Some(v) = &args.x0 {
            cfg.x0 = Some(v.0.clone());
        }
        if let Some(v) = args.grid {
            cfg.grid = v;
        }
        if !args.points.is_empty() {
            cfg.points = args.points.iter().map(|c| c.0.clone()).collect();
        }
        cfg.reverse |= args.reverse;
        if args.k_hat.is_some() {
            cfg.k_hat = args.k_hat;
        }
        if args.r_hat.is_some() {
            cfg.r_hat = args.r_hat;
        }
        if let Some(v) = args.seed {
            cfg.seed = v;
        }
        if let Some(v) = &args.output_dir {
            cfg.output_dir = v.clone();
        }
        Ok(cfg)
    }

    /// Reads a config file; a `header` entry left by an echo is ignored.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("header");
        }
        serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config is serializable")
    }

    pub fn header(&self) -> ReportHeader {
        ReportHeader::new(&self.to_value(), self.seed)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config files or output locations; exit code 2.
    Config(String),
    /// A numerical routine failed; exit code 3.
    Numerical(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::DimensionMismatch { .. }
            | Error::StartAboveLevel { .. }
            | Error::LevelUnderflow { .. }
            | Error::ThetaGuard { .. }
            | Error::MissingConstants(_)
            | Error::ReverseUnavailable(_)
            | Error::OutsideDomain { .. }
            | Error::EmptySublevel { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(e) => match e {
                Error::AtStep { step, source } => {
                    write!(f, "numerical failure at step {step}: {source}")
                }
                e => write!(f, "numerical failure: {e}"),
            },
        }
    }
}

/// Builds a function from its command-line name.
pub fn parse_function(
    name: &str,
    dim: usize,
    mode: ProjectionMode,
) -> Result<FunctionRef, CliError> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("localized:") {
        let bad = || {
            CliError::Config(format!(
                "expected localized:<base>:<c1,c2,..>:<delta>, got {name:?}"
            ))
        };
        let (head, delta) = rest.rsplit_once(':').ok_or_else(bad)?;
        let (base, center) = head.rsplit_once(':').ok_or_else(bad)?;
        let delta: f64 = delta.parse().map_err(|_| bad())?;
        let center = parse_coords(center).map_err(CliError::Config)?.0;
        let base = parse_function(base, center.len(), mode)?;
        return Ok(Arc::new(localize(base, Point::from_vec(center), delta)?));
    }
    if let Some(v) = name.strip_prefix("constant:") {
        let value: f64 = v
            .parse()
            .map_err(|_| CliError::Config(format!("bad constant value {v:?}")))?;
        return Ok(Arc::new(Constant { dim, value }));
    }
    match name {
        "norm" => Ok(Arc::new(Norm { dim })),
        "tube" => Ok(Arc::new(Tube)),
        "gauge" => Ok(Arc::new(Gauge::with_mode(mode))),
        other => Err(CliError::Config(format!(
            "unknown function {other:?}; see `sweepdescent gallery`"
        ))),
    }
}

/// Default level window of a function.
pub fn default_window(f: &dyn QuasiconvexFunction) -> Result<[f64; 2], CliError> {
    match f.name().as_str() {
        "norm" => return Ok([0.5, 1.5]),
        "tube" => return Ok([0.3, 1.7]),
        "gauge" => return Ok([1.25, 1.75]),
        _ => {}
    }
    let (lo, hi) = (f.inf_value(), f.sup_value());
    if !lo.is_finite() || hi <= lo {
        return Err(CliError::Config(format!(
            "{} has no default level window; pass --window",
            f.name()
        )));
    }
    if hi.is_finite() {
        Ok([lo + 0.2 * (hi - lo), lo + 0.8 * (hi - lo)])
    } else {
        Ok([lo + 0.5, lo + 1.5])
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn prepare_output(cfg: &ExperimentConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.output_dir).map_err(|e| {
        CliError::Config(format!("cannot create {}: {e}", cfg.output_dir.display()))
    })?;
    let mut echo = json!({ "header": cfg.header() });
    if let (Some(obj), Value::Object(fields)) = (echo.as_object_mut(), cfg.to_value()) {
        obj.extend(fields);
    }
    write(
        &cfg.output_dir.join("config.json"),
        &(serde_json::to_string_pretty(&echo).expect("config is serializable") + "\n"),
    )
}

fn fmt_point(p: &Point) -> String {
    let parts: Vec<String> = p.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn regularized(
    base: &FunctionRef,
    eps: Option<f64>,
) -> Result<Option<RegularizedFunction>, CliError> {
    Ok(match eps {
        Some(e) => Some(regularize(base.clone(), e)?),
        None => None,
    })
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Descend(args) => ExperimentConfig::resolve(&args).and_then(descend),
        Command::Verify(args) => ExperimentConfig::resolve(&args).and_then(verify),
        Command::Foliate(args) => ExperimentConfig::resolve(&args).and_then(foliate),
        Command::Gallery => gallery(),
        Command::Regularize(args) => ExperimentConfig::resolve(&args).and_then(regularize_table),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sweepdescent: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    if let Ok(v) = std::env::var("SWEEPDESCENT_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                // the global pool can only be built once per process
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("sweepdescent: configuration error: SWEEPDESCENT_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    run(Cli::parse())
}

fn descend(mut cfg: ExperimentConfig) -> Result<u8, CliError> {
    if cfg.reverse && cfg.epsilon.is_none() {
        return Err(CliError::Config(
            "--reverse needs prox-regular complements of the sublevel sets (hypothesis H3); \
             only regularized functions provide them, so pass --epsilon"
                .into(),
        ));
    }
    let base = parse_function(&cfg.function, cfg.dim, cfg.projection)?;
    let fe = regularized(&base, cfg.epsilon)?;
    let f: &dyn QuasiconvexFunction = match &fe {
        Some(fe) => fe,
        None => base.as_ref(),
    };
    let x0 = Point::from_vec(
        cfg.x0
            .clone()
            .ok_or_else(|| CliError::Config("descend needs a start point (--x0)".into()))?,
    );
    let alpha2 = match cfg.alpha2 {
        Some(a) => a,
        None => f.eval(&x0)?,
    };
    if !alpha2.is_finite() {
        return Err(CliError::Config(
            "start point lies outside the domain".into(),
        ));
    }
    cfg.alpha2 = Some(alpha2);
    if let Some(fe) = &fe {
        if cfg.reverse {
            if cfg.r_hat.is_none() {
                cfg.r_hat = Some(fe.eps());
            }
            if cfg.k_hat.is_none() {
                let lv = levels(alpha2 - cfg.horizon, alpha2, 3);
                let (_, k) = verify_moving_map_lipschitz(
                    fe,
                    &lv,
                    1.0,
                    cfg.suite.hausdorff_resolution,
                    cfg.seed,
                )?;
                cfg.k_hat = k;
            }
        }
    }
    let sc = SweepingConfig {
        alpha2,
        horizon: cfg.horizon,
        steps: cfg.steps,
        k_hat: cfg.k_hat,
        r_hat: cfg.r_hat,
        seed: cfg.seed,
    };
    prepare_output(&cfg)?;
    let comment = cfg.header().comment_line();
    let fwd = forward_catching_up(f, &x0, &sc)?;
    write(
        &cfg.output_dir.join("trajectory.csv"),
        &fwd.to_csv(&comment),
    )?;
    println!("function          {}", f.name());
    println!("endpoint          {}", fmt_point(&fwd.endpoint()));
    println!("value-decay       {:.3e}", fwd.value_decay_residual());
    println!("max speed         {:.6}", fwd.max_speed());
    if let (Some(fe), true) = (&fe, cfg.reverse) {
        let rev = reverse_catching_up(fe, &fwd.endpoint(), cfg.horizon, &sc)?;
        write(&cfg.output_dir.join("reverse.csv"), &rev.to_csv(&comment))?;
        println!("reverse endpoint  {}", fmt_point(&rev.endpoint()));
        println!("recovery error    {:.3e}", (rev.endpoint() - &x0).norm());
    }
    println!("output            {}", cfg.output_dir.display());
    Ok(0)
}

fn verify(mut cfg: ExperimentConfig) -> Result<u8, CliError> {
    let base = parse_function(&cfg.function, cfg.dim, cfg.projection)?;
    let window = match cfg.window {
        Some(w) => w,
        None => default_window(base.as_ref())?,
    };
    cfg.window = Some(window);
    prepare_output(&cfg)?;
    let report = run_suite(
        base,
        cfg.epsilon,
        (window[0], window[1]),
        &cfg.tolerances,
        &cfg.suite,
        cfg.seed,
        cfg.to_value(),
    )?;
    write(&cfg.output_dir.join("report.json"), &report.to_json())?;
    println!("{} on [{}, {}]", report.function, window[0], window[1]);
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        println!("  {tag} {:<24} {}", c.name, c.detail);
    }
    let k = &report.constants;
    let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
    println!(
        "  ell_hat {}  K_hat {}  r_hat {}  L_hat {}",
        show(k.ell_hat),
        show(k.k_hat),
        show(k.r_hat),
        show(k.l_hat)
    );
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn foliate(mut cfg: ExperimentConfig) -> Result<u8, CliError> {
    let eps = cfg.epsilon.ok_or_else(|| {
        CliError::Config("foliation runs on a regularized function; pass --epsilon".into())
    })?;
    if cfg.grid == 0 {
        return Err(CliError::Config("grid size must be at least 1".into()));
    }
    let base = parse_function(&cfg.function, cfg.dim, cfg.projection)?;
    let fe = regularize(base.clone(), eps)?;
    let alpha2 = match cfg.alpha2 {
        Some(a) => a,
        None => default_window(base.as_ref())?[1],
    };
    cfg.alpha2 = Some(alpha2);
    if alpha2 - cfg.horizon <= fe.inf_value() {
        return Err(Error::LevelUnderflow {
            final_level: alpha2 - cfg.horizon,
            inf: fe.inf_value(),
        }
        .into());
    }
    let sc = SweepingConfig {
        alpha2,
        horizon: cfg.horizon,
        steps: cfg.steps,
        k_hat: cfg.k_hat,
        r_hat: cfg.r_hat,
        seed: cfg.seed,
    };
    let grid = boundary_grid(fe.sublevel(alpha2)?.as_ref(), cfg.grid, cfg.seed)?;
    prepare_output(&cfg)?;
    let header = cfg.header();
    let comment = header.comment_line();
    let fm = flow_map(&fe, &grid, &sc);
    let mut entries = Vec::with_capacity(grid.len());
    let mut failures = 0;
    for (i, (m, tr)) in fm.grid.iter().zip(&fm.trajectories).enumerate() {
        let start: Vec<f64> = m.iter().copied().collect();
        match tr {
            Ok(tr) => {
                let file = format!("trajectory_{i:04}.csv");
                write(&cfg.output_dir.join(&file), &tr.to_csv(&comment))?;
                let end: Vec<f64> = tr.endpoint().iter().copied().collect();
                entries.push(json!({"index": i, "file": file, "start": start, "endpoint": end}));
            }
            Err(e) => {
                failures += 1;
                entries.push(json!({"index": i, "start": start, "error": e.to_string()}));
            }
        }
    }
    let separation = fm.min_endpoint_separation();
    let index = json!({
        "header": header,
        "function": fe.name(),
        "alpha2": alpha2,
        "T": cfg.horizon,
        "steps": cfg.steps,
        "grid_size": grid.len(),
        "min_endpoint_separation": if separation.is_finite() { Some(separation) } else { None },
        "trajectories": entries,
    });
    // written last so a complete index means a complete run
    write(
        &cfg.output_dir.join("index.json"),
        &(serde_json::to_string_pretty(&index).expect("index is serializable") + "\n"),
    )?;
    println!(
        "{} trajectories from {} grid points",
        grid.len() - failures,
        grid.len()
    );
    if separation.is_finite() {
        println!("min endpoint separation {separation:.6e}");
    }
    println!("output {}", cfg.output_dir.display());
    if failures > 0 {
        eprintln!("sweepdescent: {failures} trajectories failed; see index.json");
        return Ok(3);
    }
    Ok(0)
}

fn gallery() -> Result<u8, CliError> {
    let entries: [(&str, &str, FunctionRef); 4] = [
        (
            "norm",
            "Euclidean norm on R^d (--dim)",
            Arc::new(Norm { dim: 2 }),
        ),
        (
            "tube",
            "max(0, x - sqrt(1 - y^2)) on the hull of B(0,1) and B((3,0),1)",
            Arc::new(Tube),
        ),
        (
            "gauge",
            "gauge of moving disks; curvature radius drops to 0 at level 1 (--projection)",
            Arc::new(Gauge::default()),
        ),
        (
            "constant:<v>",
            "constant function; every point is critical",
            Arc::new(Constant { dim: 2, value: 0.0 }),
        ),
    ];
    println!(
        "{:<14} {:>4} {:>6} {:>6} {:>12}  description",
        "name", "dim", "inf", "sup", "window"
    );
    for (name, about, f) in entries {
        let window = default_window(f.as_ref())
            .map(|w| format!("{}:{}", w[0], w[1]))
            .unwrap_or_else(|_| "-".into());
        println!(
            "{:<14} {:>4} {:>6} {:>6} {:>12}  {}",
            name,
            if name == "tube" || name == "gauge" {
                "2"
            } else {
                "d"
            },
            f.inf_value(),
            f.sup_value(),
            window,
            about
        );
    }
    println!(
        "{:<14} {:>4} {:>6} {:>6} {:>12}  restriction of <base> to the closed ball B(c, delta)",
        "localized:<base>:<c>:<delta>", "", "", "", ""
    );
    Ok(0)
}

fn regularize_table(mut cfg: ExperimentConfig) -> Result<u8, CliError> {
    let eps = cfg
        .epsilon
        .ok_or_else(|| CliError::Config("regularize needs --epsilon".into()))?;
    let base = parse_function(&cfg.function, cfg.dim, cfg.projection)?;
    let fe = regularize(base.clone(), eps)?;
    let points: Vec<Point> = if cfg.points.is_empty() {
        let window = match cfg.window {
            Some(w) => w,
            None => default_window(base.as_ref())?,
        };
        cfg.window = Some(window);
        let bbox = bounding_box(fe.sublevel(window[1])?.as_ref(), cfg.seed)?;
        bbox.grid(cfg.grid.max(1))
    } else {
        cfg.points.iter().cloned().map(Point::from_vec).collect()
    };
    let d = base.dim();
    for p in &points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            }
            .into());
        }
    }
    prepare_output(&cfg)?;
    let mut out = cfg.header().comment_line() + "\n";
    let coords = |prefix: &str| {
        (0..d)
            .map(|i| format!("{prefix}{i}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    out.push_str(&format!(
        "{},f,f_eps,{},at_infimum\n",
        coords("x"),
        coords("z")
    ));
    for x in &points {
        let fx = base.eval(x)?;
        let v = fe.eval(x)?;
        let xs: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        let (zs, at_inf) = if v.is_finite() {
            let z = fe.base_point(x)?;
            (
                z.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                z.at_infimum.to_string(),
            )
        } else {
            (vec![String::new(); d], String::new())
        };
        out.push_str(&format!(
            "{},{fx},{v},{},{at_inf}\n",
            xs.join(","),
            zs.join(",")
        ));
    }
    write(&cfg.output_dir.join("regularize.csv"), &out)?;
    println!(
        "{} points of {} written to {}",
        points.len(),
        fe.name(),
        cfg.output_dir.join("regularize.csv").display()
    );
    Ok(0)
}
