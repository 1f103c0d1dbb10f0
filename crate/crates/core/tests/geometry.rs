use std::f64::consts::TAU;
use std::sync::Arc;

use sweepdescent::functions::{Gauge, QuasiconvexFunction, Tube};
use sweepdescent::geometry::{
    dilate, hausdorff_distance, hausdorff_distance_sets, outward_normal, point, project_convex,
    sample_boundary, Ball, BallHull, ConvexSet, MembershipSet, Point, SetRef,
};
use sweepdescent::Error;

/// Boundary of a star-shaped set around `c`, by bisection on rays of a membership test.
fn dense_boundary(inside: &dyn Fn([f64; 2]) -> bool, c: [f64; 2], n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            let (mut lo, mut hi) = (0.0, 10.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside([c[0] + mid * a.cos(), c[1] + mid * a.sin()]) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            [c[0] + lo * a.cos(), c[1] + lo * a.sin()]
        })
        .collect()
}

fn nearest(sample: &[[f64; 2]], x: [f64; 2]) -> [f64; 2] {
    *sample
        .iter()
        .min_by(|a, b| {
            let da = (a[0] - x[0]).hypot(a[1] - x[1]);
            let db = (b[0] - x[0]).hypot(b[1] - x[1]);
            da.total_cmp(&db)
        })
        .unwrap()
}

fn stadium(t: f64) -> impl Fn([f64; 2]) -> bool {
    move |p: [f64; 2]| {
        let cx = p[0].clamp(0.0, t);
        (p[0] - cx).hypot(p[1]) <= 1.0
    }
}

fn close(p: &Point, q: [f64; 2], tol: f64) -> bool {
    (p[0] - q[0]).hypot(p[1] - q[1]) <= tol
}

fn unit_disk() -> Ball {
    Ball::new(point(&[0.0, 0.0]), 1.0)
}

#[test]
fn ball_projection() {
    let b = unit_disk();
    assert!(close(
        &project_convex(&b, &point(&[2.0, 0.0])).unwrap(),
        [1.0, 0.0],
        1e-12
    ));
    assert!(close(
        &project_convex(&b, &point(&[0.3, 0.1])).unwrap(),
        [0.3, 0.1],
        0.0
    ));
}

#[test]
fn tube_sublevel_projection_matches_brute_force() {
    let s = Tube.sublevel(0.5).unwrap();
    let p = project_convex(s.as_ref(), &point(&[2.0, 0.0])).unwrap();
    let sample = dense_boundary(&stadium(0.5), [0.25, 0.0], 20_000);
    let q = nearest(&sample, [2.0, 0.0]);
    assert!(close(&p, q, 1e-3));
    assert!(close(&p, [1.5, 0.0], 1e-9));
    for x in [[0.7, 1.6], [-1.3, -0.9], [0.25, -2.0]] {
        let p = project_convex(s.as_ref(), &point(&x)).unwrap();
        assert!(close(&p, nearest(&sample, x), 1e-3), "{x:?}");
    }
}

#[test]
fn dilation_examples() {
    let d = dilate(Arc::new(unit_disk()), 1.0);
    assert!(d.contains(&point(&[0.0, 1.9])));
    let d = dilate(Arc::new(unit_disk()), 0.5);
    assert!(close(
        &d.project(&point(&[3.0, 0.0])).unwrap(),
        [1.5, 0.0],
        1e-12
    ));
    let dot = Ball::new(point(&[0.0, 0.0]), 0.0);
    let d = dilate(Arc::new(dot), 2.0);
    assert!((d.distance(&point(&[3.0, 0.0])).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn hausdorff_examples() {
    let a = unit_disk();
    let b = Ball::new(point(&[0.0, 0.0]), 2.0);
    let d = hausdorff_distance_sets(&a, &b, 0.01, 1).unwrap();
    assert!((d - 1.0).abs() < 1e-2, "{d}");
    let sa = sample_boundary(&a, 0.01, 4000, 1).unwrap();
    assert_eq!(hausdorff_distance(&sa, &sa).unwrap(), 0.0);

    let t0 = Tube.sublevel(0.0).unwrap();
    let t1 = Tube.sublevel(1.0).unwrap();
    let d = hausdorff_distance_sets(t0.as_ref(), t1.as_ref(), 0.005, 2).unwrap();
    // independent oracle: farthest point of the dense stadium boundary from the unit disk
    let far = dense_boundary(&stadium(1.0), [0.5, 0.0], 20_000)
        .iter()
        .map(|p| (p[0].hypot(p[1]) - 1.0).max(0.0))
        .fold(0.0, f64::max);
    assert!(
        (d - far).abs() < 1e-2 && (d - 1.0).abs() < 1e-2,
        "{d} vs {far}"
    );
}

#[test]
fn empty_sample_is_an_error() {
    let a = unit_disk();
    let sa = sample_boundary(&a, 0.1, 100, 0).unwrap();
    let mut empty = sa.clone();
    empty.points.clear();
    assert_eq!(hausdorff_distance(&sa, &empty), Err(Error::EmptySample));
}

#[test]
fn normals() {
    let b = unit_disk();
    assert!(close(
        &outward_normal(&b, &point(&[0.0, 1.0])).unwrap(),
        [0.0, 1.0],
        1e-6
    ));
    assert!(close(
        &outward_normal(&b, &point(&[1.0, 0.0])).unwrap(),
        [1.0, 0.0],
        1e-6
    ));
    let s = Tube.sublevel(1.0).unwrap();
    let n = outward_normal(s.as_ref(), &point(&[2.0, 0.0])).unwrap();
    // finite difference of the sampled boundary: the tangent at the cap tip is vertical
    let sample = dense_boundary(&stadium(1.0), [0.5, 0.0], 40_000);
    let i = sample
        .iter()
        .position(|p| p[0] > 1.999 && p[1].abs() < 1e-4)
        .unwrap();
    let (a, c) = (sample[i + 1], sample[(i + sample.len() - 1) % sample.len()]);
    let tangent = [a[0] - c[0], a[1] - c[1]];
    let tn = tangent[0].hypot(tangent[1]);
    let fd = [tangent[1] / tn, -tangent[0] / tn];
    assert!(
        close(&n, fd, 1e-3) && close(&n, [1.0, 0.0], 1e-6),
        "{n:?} vs {fd:?}"
    );
}

#[test]
fn square_corner_has_no_unique_normal() {
    let square = MembershipSet::new(
        Arc::new(|x: &Point| x[0].abs() <= 1.0 && x[1].abs() <= 1.0),
        point(&[0.0, 0.0]),
    );
    let e = outward_normal(&square, &point(&[1.0, 1.0])).unwrap_err();
    assert!(matches!(e, Error::DegenerateNormal { .. }), "{e:?}");
}

#[test]
fn cutting_plane_examples() {
    let disk = MembershipSet::new(Arc::new(|x: &Point| x.norm() <= 1.0), point(&[0.0, 0.0]));
    assert!(close(
        &disk.project(&point(&[2.0, 0.0])).unwrap(),
        [1.0, 0.0],
        1e-6
    ));
    let inner = point(&[0.2, -0.4]);
    assert_eq!(disk.project(&inner).unwrap(), inner);

    let gauge_set = MembershipSet::new(
        Arc::new(|x: &Point| Gauge::default().eval(x).unwrap() <= 1.5),
        point(&[0.0, 0.5]),
    );
    let p = gauge_set.project(&point(&[0.0, 3.0])).unwrap();
    let hull = Gauge::moving_disk(1.5);
    let sample = dense_boundary(&|q| hull.contains(&point(&q)), [0.0, 0.5], 200_000);
    assert!(close(&p, nearest(&sample, [0.0, 3.0]), 1e-4), "{p:?}");
}

#[test]
fn analytic_and_cutting_plane_agree_on_ball_hulls() {
    let hull = BallHull::new(point(&[0.0, 0.0]), 1.0, point(&[1.5, 0.5]), 0.4);
    let h = hull.clone();
    let generic = MembershipSet::new(Arc::new(move |x: &Point| h.contains(x)), point(&[0.3, 0.1]));
    for x in [[3.0, 1.0], [-2.0, 0.3], [1.0, -1.5], [0.8, 1.4]] {
        let a = hull.project(&point(&x)).unwrap();
        let b = generic.project(&point(&x)).unwrap();
        assert!((a - b).norm() < 1e-6, "{x:?}");
    }
}

#[test]
fn sets_are_shareable() {
    let s: SetRef = Arc::new(unit_disk());
    let handles: Vec<_> = (0..4)
        .map(|i| {
            let s = s.clone();
            std::thread::spawn(move || s.project(&point(&[i as f64 + 2.0, 0.0])).unwrap())
        })
        .collect();
    for h in handles {
        assert!(close(&h.join().unwrap(), [1.0, 0.0], 1e-12));
    }
}
