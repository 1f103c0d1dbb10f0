//! The tube function and its regularization: values, base points, and the
//! dilated sublevel sets.

use std::sync::Arc;

use sweepdescent::functions::{QuasiconvexFunction, Tube};
use sweepdescent::geometry::point;
use sweepdescent::regularization::{regularize, semigroup_check};
use sweepdescent::verification::grid_min_over_ball;

fn main() -> sweepdescent::Result<()> {
    let eps = 0.5;
    let fe = regularize(Arc::new(Tube), eps)?;

    println!(
        "{:>12} {:>8} {:>8} {:>10} {:>18}",
        "x", "f", "f_eps", "grid min", "base point"
    );
    for x in [[3.0, 0.0], [2.4, 0.6], [1.2, 0.0], [0.5, 1.3], [-1.2, 0.3]] {
        let p = point(&x);
        let v = fe.eval(&p)?;
        let g = grid_min_over_ball(&Tube, &p, eps, 21, 4)?;
        let z = fe.base_point(&p)?;
        println!(
            "({:>4}, {:>4}) {:>8.4} {:>8.4} {:>10.4}   ({:.4}, {:.4}){}",
            x[0],
            x[1],
            Tube.eval(&p)?,
            v,
            g,
            z.point[0],
            z.point[1],
            if z.at_infimum { " at inf" } else { "" }
        );
    }

    let sg = semigroup_check(Arc::new(Tube), 0.1, 0.4, &point(&[3.0, 0.0]), 1e-8)?;
    println!("(f_0.1)_0.4 = {:.6}, f_0.5 = {:.6}", sg.nested, sg.combined);
    Ok(())
}
