use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Seed for every randomized operation. Equal seeds give identical output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent child seed for task `index`, stable across thread counts.
    pub fn derive(self, index: u64) -> RngSeed {
        RngSeed(splitmix64(
            self.0 ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)),
        ))
    }
}

impl From<u64> for RngSeed {
    fn from(s: u64) -> Self {
        RngSeed(s)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
