//! Hausdorff distances between tube sublevels: the moving sets are
//! 1-Lipschitz in the level.

use sweepdescent::functions::{QuasiconvexFunction, Tube};
use sweepdescent::geometry::hausdorff_distance_sets;

fn main() -> sweepdescent::Result<()> {
    let levels = [0.0, 0.25, 0.5, 1.0, 1.5];
    print!("{:>6}", "");
    for b in levels {
        print!("{b:>8.2}");
    }
    println!();
    for a in levels {
        print!("{a:>6.2}");
        for b in levels {
            let d = hausdorff_distance_sets(
                Tube.sublevel(a)?.as_ref(),
                Tube.sublevel(b)?.as_ref(),
                0.005,
                0,
            )?;
            print!("{d:>8.4}");
        }
        println!();
    }
    Ok(())
}
