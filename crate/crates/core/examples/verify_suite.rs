//! Full diagnostics on three cases: a passing regularized tube, the plain
//! norm, and the moving-disk gauge where prox-regularity fails near s = 1.

use std::sync::Arc;

use sweepdescent::functions::{FunctionRef, Gauge, Norm, Tube};
use sweepdescent::tolerances::CheckTolerances;
use sweepdescent::verification::{run_suite, Status, SuiteOptions};

fn main() -> sweepdescent::Result<()> {
    let cases: [(FunctionRef, Option<f64>, (f64, f64)); 3] = [
        (Arc::new(Tube), Some(0.25), (0.3, 1.7)),
        (Arc::new(Norm { dim: 2 }), None, (0.5, 1.5)),
        (Arc::new(Gauge::default()), None, (0.9, 1.1)),
    ];
    for (f, eps, window) in cases {
        let rep = run_suite(
            f,
            eps,
            window,
            &CheckTolerances::default(),
            &SuiteOptions::default(),
            0,
            serde_json::Value::Null,
        )?;
        println!("{} on {:?}", rep.function, window);
        for c in &rep.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            println!("  {tag} {:<26} {}", c.name, c.detail);
        }
        let k = &rep.constants;
        println!(
            "  ell_hat {:?}  K_hat {:?}  r_hat {:?}\n",
            k.ell_hat, k.k_hat, k.r_hat
        );
    }
    Ok(())
}
