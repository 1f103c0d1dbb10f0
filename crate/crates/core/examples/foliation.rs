//! Flow map from a boundary grid: every point of [f_eps <= a2] is swept to
//! a distinct endpoint.

use std::sync::Arc;

use sweepdescent::functions::{QuasiconvexFunction, Tube};
use sweepdescent::geometry::boundary_grid;
use sweepdescent::regularization::regularize;
use sweepdescent::sweeping::{flow_map, SweepingConfig};

fn main() -> sweepdescent::Result<()> {
    let fe = regularize(Arc::new(Tube), 0.25)?;
    let alpha2 = 1.5;
    let grid = boundary_grid(fe.sublevel(alpha2)?.as_ref(), 16, 0)?;
    let map = flow_map(&fe, &grid, &SweepingConfig::new(alpha2, 1.0, 400));

    for (m, tr) in grid.iter().zip(&map.trajectories) {
        match tr {
            Ok(tr) => {
                let e = tr.endpoint();
                println!(
                    "({:>7.4}, {:>7.4}) -> ({:>7.4}, {:>7.4})",
                    m[0], m[1], e[0], e[1]
                );
            }
            Err(e) => println!("({:>7.4}, {:>7.4}) failed: {e}", m[0], m[1]),
        }
    }
    println!(
        "min endpoint separation {:.4}",
        map.min_endpoint_separation()
    );
    Ok(())
}
