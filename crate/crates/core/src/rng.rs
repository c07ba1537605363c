//! Deterministic per-trajectory random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Root seed for a Monte-Carlo run.
///
/// Trajectory `i` draws from a ChaCha8 stream seeded with
/// `mix(seed, i) = splitmix64(splitmix64(seed) ^ splitmix64(i ^ 0xD1B5_4A32_D192_ED03))`,
/// so each trajectory's randomness depends only on `(seed, i)` and not on
/// how trajectories are scheduled across workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        RngSpec { seed }
    }

    pub fn mix(&self, trajectory: u64) -> u64 {
        splitmix64(splitmix64(self.seed) ^ splitmix64(trajectory ^ 0xD1B5_4A32_D192_ED03))
    }

    pub fn stream(&self, trajectory: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.mix(trajectory))
    }
}
