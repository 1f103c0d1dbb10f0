//! Empirical check that forward trajectories of f_eps are curves of
//! steepest descent (speed times slope close to one).

use std::sync::Arc;

use sweepdescent::functions::{FunctionRef, Norm, Tube};
use sweepdescent::regularization::regularize;
use sweepdescent::verification::{probe_steepest_descent, ProbeOptions};

fn main() -> sweepdescent::Result<()> {
    let cases: [(&str, FunctionRef, (f64, f64)); 2] = [
        ("norm", Arc::new(Norm { dim: 2 }), (0.5, 1.5)),
        ("tube", Arc::new(Tube), (0.3, 1.7)),
    ];
    for (name, f, levels) in cases {
        let fe = regularize(f, 0.25)?;
        let opts = ProbeOptions {
            starts: 20,
            levels,
            steps: 40,
            horizon: levels.1 - levels.0,
            product_tol: 5e-2,
            step_fraction: 0.95,
            min_fraction: 0.9,
            criticality: 1e-2,
        };
        let out = probe_steepest_descent(&fe, &opts, 1)?;
        println!(
            "{name}: {:.2} of {} starts pass",
            out.fraction,
            out.starts.len()
        );
        for (x, frac) in out.starts.iter().take(5) {
            println!(
                "  start ({:>7.4}, {:>7.4})  steps within tolerance {frac:.2}",
                x[0], x[1]
            );
        }
    }
    Ok(())
}
