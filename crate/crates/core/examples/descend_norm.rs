//! Forward catching-up on the Euclidean norm, with and without a waiting phase.

use sweepdescent::functions::Norm;
use sweepdescent::geometry::point;
use sweepdescent::sweeping::{forward_catching_up, SweepingConfig};

fn main() -> sweepdescent::Result<()> {
    let f = Norm { dim: 2 };
    let cfg = SweepingConfig::new(2.0, 1.0, 1000);

    let on_boundary = forward_catching_up(&f, &point(&[2.0, 0.0]), &cfg)?;
    let inside = forward_catching_up(&f, &point(&[1.5, 0.0]), &cfg)?;

    for (name, tr) in [("from (2, 0)", &on_boundary), ("from (1.5, 0)", &inside)] {
        let end = tr.endpoint();
        println!(
            "{name}: endpoint ({:.4}, {:.4}), waits {} steps, value decay residual {:.1e}",
            end[0],
            end[1],
            tr.waiting_steps().saturating_sub(1),
            tr.value_decay_residual()
        );
    }
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let u = inside.at(t);
        println!("  t = {t:.2}  u = ({:.4}, {:.4})", u[0], u[1]);
    }
    Ok(())
}
