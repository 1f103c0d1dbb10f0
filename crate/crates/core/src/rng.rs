//! Seeded random streams.
//!
//! Every consumer asks for its own stream id, so the numbers it sees do not
//! depend on how many draws other consumers made or in which order they ran.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::Point;

pub fn stream(seed: u64, stream_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Uniform direction on the unit sphere of dimension `dim`.
pub fn unit_direction<R: Rng>(rng: &mut R, dim: usize) -> Point {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Uniform point in the ball of radius `radius` around `center`.
pub fn point_in_ball<R: Rng>(rng: &mut R, center: &Point, radius: f64) -> Point {
    let dim = center.len();
    let dir = unit_direction(rng, dim);
    let u: f64 = rng.random();
    center + dir * (radius * u.powf(1.0 / dim as f64))
}

/// Uniform point in an axis-aligned box.
pub fn point_in_box<R: Rng>(rng: &mut R, lo: &[f64], hi: &[f64]) -> Point {
    DVector::from_iterator(
        lo.len(),
        lo.iter()
            .zip(hi)
            .map(|(&a, &b)| a + (b - a) * rng.random::<f64>()),
    )
}
