//! Seeded sampling of verification points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::ClusterPoint;

pub const DEFAULT_SEED: u64 = 42;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Point with coordinates `exp(U[-1, 1])`, i.e. log-uniform in `[e⁻¹, e]`.
pub fn log_uniform_point<R: Rng>(rng: &mut R, n: usize) -> ClusterPoint {
    let logs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    ClusterPoint::from_logs(&logs).expect("exp of a finite value is positive")
}

pub fn log_uniform_points<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<ClusterPoint> {
    (0..count).map(|_| log_uniform_point(rng, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_in_range_and_reproducible() {
        let a = log_uniform_points(&mut seeded_rng(7), 5, 20);
        let b = log_uniform_points(&mut seeded_rng(7), 5, 20);
        assert_eq!(a, b);
        let e = std::f64::consts::E;
        for p in &a {
            assert!(p.values().iter().all(|&x| (1.0 / e..=e).contains(&x)));
        }
    }
}
