//! Reproducible random streams.
//!
//! A [`SeededRng`] is a `(seed, stream)` pair. Each replicate of an experiment
//! gets its own ChaCha stream, so a replicate's draws do not depend on how
//! replicates are scheduled across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededRng {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl SeededRng {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        SeededRng { seed, stream_id }
    }

    /// Independent family of streams for a named sub-task (e.g. one grid point).
    pub fn derive(seed: u64, domain: u64) -> u64 {
        splitmix64(seed ^ splitmix64(domain))
    }

    /// Stream `replicate` of sub-task `domain`.
    pub fn for_replicate(seed: u64, domain: u64, replicate: u64) -> Self {
        SeededRng::new(Self::derive(seed, domain), replicate)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
