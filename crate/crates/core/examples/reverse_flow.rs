//! Forward then reverse sweeping on a regularized tube; the recovery error
//! shrinks as the step count grows.

use std::sync::Arc;

use sweepdescent::functions::Tube;
use sweepdescent::geometry::point;
use sweepdescent::regularization::regularize;
use sweepdescent::sweeping::{forward_catching_up, reverse_catching_up, SweepingConfig};

fn main() -> sweepdescent::Result<()> {
    let eps = 0.25;
    let fe = regularize(Arc::new(Tube), eps)?;
    let r = 1.0 + eps;
    let a = std::f64::consts::FRAC_PI_4;
    let start = point(&[1.5 + r * a.cos(), r * a.sin()]);
    let t_bar = 0.5;

    for k in [250, 500, 1000, 2000] {
        let cfg = SweepingConfig::new(1.5, t_bar, k).with_constants(1.0, eps);
        let fwd = forward_catching_up(&fe, &start, &cfg)?;
        let back = reverse_catching_up(&fe, &fwd.endpoint(), t_bar, &cfg)?;
        println!(
            "k = {k:>4}  theta = {:.4}  recovery error {:.3e}",
            cfg.theta(t_bar, 1.0, eps),
            (back.endpoint() - &start).norm()
        );
    }

    let cfg = SweepingConfig::new(1.5, t_bar, 1).with_constants(1.0, eps);
    match reverse_catching_up(&fe, &point(&[2.25, 0.0]), t_bar, &cfg) {
        Err(e) => println!("k = 1 refused: {e}"),
        Ok(_) => println!("k = 1 unexpectedly accepted"),
    }
    Ok(())
}
