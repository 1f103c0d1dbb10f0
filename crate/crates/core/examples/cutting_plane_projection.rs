//! Projection onto a convex set known only through a membership test.

use std::sync::Arc;

use sweepdescent::functions::{Gauge, QuasiconvexFunction};
use sweepdescent::geometry::{point, ConvexSet, MembershipSet, Point};

fn main() -> sweepdescent::Result<()> {
    let g = Gauge::default();
    let generic = MembershipSet::new(
        Arc::new(move |x: &Point| g.eval(x).map(|v| v <= 1.5).unwrap_or(false)),
        point(&[0.0, 0.5]),
    );
    let analytic = Gauge::moving_disk(1.5);

    for x in [[0.0, 3.0], [2.0, 2.0], [-1.8, -0.4], [0.3, 0.2]] {
        let x = point(&x);
        let p = generic.project(&x)?;
        let q = analytic.project(&x)?;
        println!(
            "({:>5.2}, {:>5.2}) -> ({:.6}, {:.6})   analytic gap {:.1e}",
            x[0],
            x[1],
            p[0],
            p[1],
            (&p - q).norm()
        );
    }
    Ok(())
}
