//! Curvature radius of the moving-disk sublevels, which collapses at s = 1,
//! and how regularization restores a floor of eps.

use std::sync::Arc;

use sweepdescent::functions::Gauge;
use sweepdescent::regularization::{prox_radius_estimate, regularize};

fn main() -> sweepdescent::Result<()> {
    let g = Gauge::default();
    let ge = regularize(Arc::new(g), 0.25)?;
    println!(
        "{:>6} {:>10} {:>10} {:>12}",
        "s", "expected", "r_hat", "r_hat eps"
    );
    for s in [0.5, 0.75, 0.95, 1.02, 1.1, 1.25, 1.5, 1.75] {
        let expected = if s < 1.0 { s } else { s - 1.0 };
        let r = prox_radius_estimate(&g, s, 400, 0)?.r_hat;
        let re = prox_radius_estimate(&ge, s, 400, 0)?.r_hat;
        println!("{s:>6.2} {expected:>10.3} {r:>10.4} {re:>12.4}");
    }
    Ok(())
}
