//! Localizing the tube to a ball, then regularizing it: the result satisfies
//! the three standing hypotheses on its level window.

use std::sync::Arc;

use sweepdescent::functions::{localize, FunctionRef, Tube};
use sweepdescent::geometry::point;
use sweepdescent::regularization::regularize;
use sweepdescent::verification::{hoffmann_localization_check, verify_h1_h3, HypothesisOptions};

fn main() -> sweepdescent::Result<()> {
    let center = point(&[1.5, 0.0]);
    let h: FunctionRef = Arc::new(localize(Arc::new(Tube), center.clone(), 0.4)?);
    println!(
        "{}: inf {:.4}, sup {:.4}",
        h.name(),
        h.inf_value(),
        h.sup_value()
    );

    let he = regularize(h, 0.2)?;
    let opts = HypothesisOptions {
        levels: 7,
        grid: 11,
        prox_samples: 300,
        min_slope: 1e-2,
        min_radius: 0.18,
    };
    let (recs, ell, r) = verify_h1_h3(&he, (0.3, 0.8), &opts, 0)?;
    for rec in &recs {
        println!("  {:?} {}: {}", rec.status, rec.name, rec.detail);
    }
    println!("  ell_hat {ell:.4}, r_hat {r:.4}");

    if let Some(out) =
        hoffmann_localization_check(Arc::new(Tube), &center, 0.4, &point(&[1.8, 0.3]), 0.6, 1e-9)?
    {
        println!(
            "localized distance {:.4} <= {:.1} x base distance {:.4}: {}",
            out.localized_distance, out.factor, out.base_distance, out.pass
        );
    }
    Ok(())
}
