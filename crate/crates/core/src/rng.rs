//! Counter-based random streams.
//!
//! Every trajectory draws from its own ChaCha8 stream: the key comes from the
//! master seed and the 64-bit stream id from the (trajectory, experiment)
//! labels, so results never depend on scheduling or thread count.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Clone, Debug)]
pub struct RandomStream {
    rng: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl RandomStream {
    /// Stream for `(master_seed, index, label)`.
    pub fn new(master_seed: u64, index: u64, label: u64) -> Self {
        let stream = mix64(index ^ mix64(label.wrapping_add(0x9E37_79B9_7F4A_7C15)));
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream);
        Self {
            rng,
            seed: master_seed,
            stream,
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::new(seed, 0, 0)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Wiener increment with variance `dt`.
    pub fn wiener_increment(&mut self, dt: f64) -> f64 {
        self.standard_normal() * dt.sqrt()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

/// Wiener increments on the grid `dt / 2^levels`.
///
/// Each coarse increment of length `dt` is drawn from the primary stream exactly
/// as [`RandomStream::wiener_increment`] would, then split by Brownian bridges
/// whose normals come from a second stream derived from the first. Runs that
/// differ only in `levels` are therefore driven by the same Brownian path, which
/// isolates the time-step error from sampling noise. Level 0 is bit-identical to
/// drawing `wiener_increment(dt)` directly.
pub struct BrownianPath<'a> {
    coarse: &'a mut RandomStream,
    bridge: Option<RandomStream>,
    dt: f64,
    levels: u32,
    pending: Vec<f64>,
}

impl<'a> BrownianPath<'a> {
    pub fn new(coarse: &'a mut RandomStream, dt: f64, levels: u32) -> Self {
        let bridge = (levels > 0).then(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(coarse.seed);
            let stream = mix64(coarse.stream ^ 0xB81D_6E5A_0C3F_2A47);
            rng.set_stream(stream);
            RandomStream { rng, seed: coarse.seed, stream }
        });
        Self { coarse, bridge, dt, levels, pending: Vec::new() }
    }

    /// Length of the returned increments.
    pub fn fine_dt(&self) -> f64 {
        self.dt / f64::from(1u32 << self.levels)
    }

    pub fn next_increment(&mut self) -> f64 {
        let Some(bridge) = self.bridge.as_mut() else {
            return self.coarse.wiener_increment(self.dt);
        };
        if self.pending.is_empty() {
            let mut parts = vec![self.coarse.wiener_increment(self.dt)];
            let mut h = self.dt;
            for _ in 0..self.levels {
                let sd = 0.5 * h.sqrt();
                parts = parts
                    .into_iter()
                    .flat_map(|w| {
                        let left = 0.5 * w + sd * bridge.standard_normal();
                        [left, w - left]
                    })
                    .collect();
                h *= 0.5;
            }
            parts.reverse();
            self.pending = parts;
        }
        self.pending.pop().expect("refined increments")
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = RandomStream::new(7, 3, 1);
        let mut b = RandomStream::new(7, 3, 1);
        let mut c = RandomStream::new(7, 4, 1);
        let xa: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let xc: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[test]
    fn wiener_increment_variance() {
        let mut s = RandomStream::from_seed(11);
        let n = 200_000;
        let dt = 0.01;
        let var = (0..n).map(|_| s.wiener_increment(dt).powi(2)).sum::<f64>() / n as f64;
        // sd of the estimator is dt * sqrt(2/n) ~ 3.2e-5
        assert!((var - dt).abs() < 2e-4, "{var}");
    }

    #[test]
    fn level_zero_matches_plain_draws() {
        let mut a = RandomStream::new(5, 1, 2);
        let mut b = RandomStream::new(5, 1, 2);
        let mut path = BrownianPath::new(&mut a, 0.01, 0);
        for _ in 0..16 {
            assert_eq!(path.next_increment(), b.wiener_increment(0.01));
        }
    }

    #[test]
    fn refined_increments_sum_to_the_coarse_path() {
        let dt = 0.02;
        let mut a = RandomStream::new(9, 0, 0);
        let mut b = RandomStream::new(9, 0, 0);
        let mut fine = BrownianPath::new(&mut a, dt, 3);
        assert_eq!(fine.fine_dt(), dt / 8.0);
        let mut sq = 0.0;
        let n = 20_000;
        for _ in 0..n {
            let parts: Vec<f64> = (0..8).map(|_| fine.next_increment()).collect();
            sq += parts.iter().map(|x| x * x).sum::<f64>();
            let total: f64 = parts.iter().sum();
            assert!((total - b.wiener_increment(dt)).abs() < 1e-14);
        }
        // quadratic variation over n coarse steps is n dt; relative sd 1/(2 sqrt n) ~ 3.5e-3
        let qv = sq / (n as f64 * dt);
        assert!((qv - 1.0).abs() < 0.015, "{qv}");
    }
}
