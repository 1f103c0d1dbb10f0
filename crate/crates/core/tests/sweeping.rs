use std::f64::consts::TAU;
use std::sync::Arc;

use sweepdescent::functions::{Norm, QuasiconvexFunction, Tube};
use sweepdescent::geometry::{boundary_grid, point, Point};
use sweepdescent::regularization::regularize;
use sweepdescent::sweeping::{
    flow_map, forward_catching_up, invert_flow_check, max_distance_increase, max_expansion_ratio,
    reverse_catching_up, SweepingConfig,
};
use sweepdescent::Error;

fn close(p: &Point, q: [f64; 2], tol: f64) -> bool {
    (p[0] - q[0]).hypot(p[1] - q[1]) <= tol
}

#[test]
fn radial_descent_of_the_norm() {
    let cfg = SweepingConfig::new(2.0, 1.0, 1000);
    let tr = forward_catching_up(&Norm { dim: 2 }, &point(&[2.0, 0.0]), &cfg).unwrap();
    assert!(close(&tr.endpoint(), [1.0, 0.0], 5e-3));
    for s in &tr.samples {
        // analytic solution u(t) = (2 - t, 0)
        assert!((s.x[0] - (2.0 - s.t)).abs() < 1e-12 && s.x[1] == 0.0);
    }
}

#[test]
fn waiting_phase_then_radial() {
    let cfg = SweepingConfig::new(2.0, 1.0, 1000);
    let tr = forward_catching_up(&Norm { dim: 2 }, &point(&[1.5, 0.0]), &cfg).unwrap();
    for s in &tr.samples {
        let expect = if s.t <= 0.5 { 1.5 } else { 2.0 - s.t };
        assert!((s.x[0] - expect).abs() < 1e-12, "t = {}", s.t);
    }
    assert_eq!(tr.waiting_steps(), 501);
}

#[test]
fn regularized_tube_along_the_axis() {
    let fe = regularize(Arc::new(Tube), 0.25).unwrap();
    let cfg = SweepingConfig::new(2.0, 1.0, 1000);
    let tr = forward_catching_up(&fe, &point(&[3.25, 0.0]), &cfg).unwrap();
    // the tip of the stadium of radius 1.25 around [0, 2 - t] moves left at unit speed
    assert!(close(&tr.endpoint(), [2.25, 0.0], 1e-2));
    assert!(tr.value_decay_residual() <= 1e-8);
    assert!(tr.boundary_riding_residual() <= 1e-7);
}

#[test]
fn underflow_and_start_above_level() {
    let cfg = SweepingConfig::new(1.0, 1.0, 10);
    let e = forward_catching_up(&Norm { dim: 2 }, &point(&[1.0, 0.0]), &cfg).unwrap_err();
    assert!(matches!(e, Error::LevelUnderflow { .. }));
    let cfg = SweepingConfig::new(1.0, 0.5, 10);
    let e = forward_catching_up(&Norm { dim: 2 }, &point(&[2.0, 0.0]), &cfg).unwrap_err();
    assert!(matches!(e, Error::StartAboveLevel { .. }));
}

#[test]
fn reverse_radial_flow() {
    let fe = regularize(Arc::new(Norm { dim: 2 }), 0.5).unwrap();
    let cfg = SweepingConfig::new(1.5, 1.0, 2000).with_constants(1.0, 0.5);
    let tr = reverse_catching_up(&fe, &point(&[1.0, 0.0]), 1.0, &cfg).unwrap();
    assert!(close(&tr.endpoint(), [2.0, 0.0], 1e-2));
    let times: Vec<f64> = tr.samples.iter().map(|s| s.t).collect();
    assert!(times.windows(2).all(|w| w[0] < w[1]));
    assert!((times[0] + 1.0).abs() < 1e-12 && times.last().unwrap().abs() < 1e-12);

    // with no span the start level is alpha2, whose boundary is the circle of radius 2
    let tr = reverse_catching_up(&fe, &point(&[2.0, 0.0]), 0.0, &cfg).unwrap();
    assert_eq!(tr.samples.len(), 1);
    assert!(close(&tr.endpoint(), [2.0, 0.0], 0.0));
}

#[test]
fn reverse_tube_along_the_axis() {
    let fe = regularize(Arc::new(Tube), 0.25).unwrap();
    let cfg = SweepingConfig::new(1.5, 0.5, 2000).with_constants(1.0, 0.25);
    let tr = reverse_catching_up(&fe, &point(&[2.25, 0.0]), 0.5, &cfg).unwrap();
    assert!(close(&tr.endpoint(), [2.75, 0.0], 1e-2));
}

#[test]
fn reverse_guards() {
    let fe = regularize(Arc::new(Norm { dim: 2 }), 0.5).unwrap();
    let cfg = SweepingConfig::new(1.5, 1.0, 2).with_constants(1.0, 0.5);
    let e = reverse_catching_up(&fe, &point(&[1.0, 0.0]), 1.0, &cfg).unwrap_err();
    assert!(matches!(e, Error::ThetaGuard { .. }), "{e:?}");
    let cfg = SweepingConfig::new(1.5, 1.0, 200);
    let e = reverse_catching_up(&fe, &point(&[1.0, 0.0]), 1.0, &cfg).unwrap_err();
    assert!(matches!(e, Error::MissingConstants(_)), "{e:?}");
}

#[test]
fn radial_flow_map() {
    let fe = regularize(Arc::new(Norm { dim: 2 }), 0.5).unwrap();
    let grid: Vec<Point> = (0..8)
        .map(|i| {
            let a = TAU * i as f64 / 8.0;
            point(&[2.0 * a.cos(), 2.0 * a.sin()])
        })
        .collect();
    let cfg = SweepingConfig::new(1.5, 1.0, 200);
    let map = flow_map(&fe, &grid, &cfg);
    for (m, tr) in grid.iter().zip(&map.trajectories) {
        let tr = tr.as_ref().unwrap();
        for s in &tr.samples {
            let expect = m * ((2.0 - s.t) / 2.0);
            assert!((s.point() - expect).norm() < 1e-9);
        }
    }

    let still = flow_map(&fe, &grid, &SweepingConfig::new(1.5, 0.0, 10));
    for (m, e) in grid.iter().zip(still.endpoints()) {
        assert_eq!(&e.unwrap(), m);
    }
}

#[test]
fn tube_flow_map_is_injective() {
    let fe = regularize(Arc::new(Tube), 0.25).unwrap();
    let cfg = SweepingConfig::new(1.5, 1.0, 200);
    let grid = boundary_grid(fe.sublevel(1.5).unwrap().as_ref(), 16, 0).unwrap();
    let map = flow_map(&fe, &grid, &cfg);
    assert!(map.trajectories.iter().all(|t| t.is_ok()));
    assert!(map.min_endpoint_separation() > 0.0);
}

#[test]
fn flow_map_keeps_failures_per_point() {
    let cfg = SweepingConfig::new(1.5, 1.0, 50);
    let grid = vec![point(&[1.5, 0.0]), point(&[0.3, 0.0])];
    let map = flow_map(&Norm { dim: 2 }, &grid, &cfg);
    assert!(map.trajectories[0].is_ok());
    assert!(matches!(
        map.trajectories[1],
        Err(Error::NotOnBoundary { .. })
    ));
}

#[test]
fn inversion_examples() {
    let fe = regularize(Arc::new(Norm { dim: 2 }), 0.5).unwrap();
    let cfg = SweepingConfig::new(1.5, 1.0, 200).with_constants(1.0, 0.5);
    let m = point(&[2.0, 0.0]);
    let rec = invert_flow_check(&fe, &m, &m, 0.5, 0.5, &cfg, Some(1.0), 0.05, 1e-8).unwrap();
    assert_eq!(rec.d_in, 0.0);
    assert!(rec.bilipschitz && rec.nonexpansive);

    let (m1, m2) = (point(&[2.0, 0.0]), point(&[0.0, 2.0]));
    let rec = invert_flow_check(&fe, &m1, &m2, 0.5, 0.5, &cfg, Some(1.0), 0.05, 1e-8).unwrap();
    // both images sit on the circle of radius 1.5 at right angles
    assert!((rec.dist_out - 1.5 * 2f64.sqrt()).abs() < 1e-9);
    assert!((rec.d_in - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    assert!(rec.bilipschitz && rec.nonexpansive);

    let e = invert_flow_check(&fe, &m1, &m2, 0.5, 0.5, &cfg, None, 0.05, 1e-8).unwrap_err();
    assert!(matches!(e, Error::MissingConstants(_)));
}

#[test]
fn trajectories_contract_forward_and_expand_boundedly_in_reverse() {
    let fe = regularize(Arc::new(Tube), 0.25).unwrap();
    let cfg = SweepingConfig::new(1.5, 0.5, 400).with_constants(1.0, 0.25);
    let a = forward_catching_up(&fe, &point(&[2.55, 0.3]), &cfg).unwrap();
    let b = forward_catching_up(&fe, &point(&[2.6, -0.2]), &cfg).unwrap();
    assert!(max_distance_increase(&a, &b) <= 1e-8);

    let ra = reverse_catching_up(&fe, &a.endpoint(), 0.5, &cfg).unwrap();
    let rb = reverse_catching_up(&fe, &b.endpoint(), 0.5, &cfg).unwrap();
    let theta = cfg.theta(0.5, 1.0, 0.25);
    assert!(max_expansion_ratio(&ra, &rb) <= 1.0 / (1.0 - theta) + 1e-9);
}

#[test]
fn step_lengths_follow_the_lipschitz_bound() {
    let fe = regularize(Arc::new(Tube), 0.25).unwrap();
    let cfg = SweepingConfig::new(1.5, 1.0, 500);
    let tr = forward_catching_up(&fe, &point(&[2.5, 0.6]), &cfg).unwrap();
    // K = 1 / ell with ell = 1
    assert!(tr.max_speed() <= 1.1);
}

#[test]
fn csv_output() {
    let cfg = SweepingConfig::new(2.0, 0.0, 10);
    let tr = forward_catching_up(&Norm { dim: 2 }, &point(&[2.0, 0.0]), &cfg).unwrap();
    let csv = tr.to_csv("# hello");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# hello");
    assert_eq!(lines[1], "step,t,level,x0,x1,f,speed,dist_to_boundary");
    assert_eq!(lines.len(), 3);
}

#[test]
fn unequal_steps_compare_by_interpolation() {
    let f = Norm { dim: 2 };
    let a =
        forward_catching_up(&f, &point(&[2.0, 0.0]), &SweepingConfig::new(2.0, 1.0, 100)).unwrap();
    let b =
        forward_catching_up(&f, &point(&[2.0, 0.0]), &SweepingConfig::new(2.0, 1.0, 37)).unwrap();
    for t in [0.0, 0.123, 0.5, 0.999] {
        assert!((a.at(t) - b.at(t)).norm() < 1e-12);
    }
    assert!(f.eval(&a.at(0.25)).unwrap() - 1.75 < 1e-12);
}
