//! Seeded, label-split random streams.
//!
//! A run owns one [`RunRng`]; every consumer (context arrivals, reward
//! draws, policy tie-breaks) pulls its own named stream. Streams are
//! derived by hashing the run seed with the label, so adding draws in one
//! stream never perturbs another and replays are exact.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

pub const CONTEXT_STREAM: &str = "context";
pub const REWARD_STREAM: &str = "reward";
pub const POLICY_STREAM: &str = "policy";

#[derive(Debug, Clone, Copy)]
pub struct RunRng {
    seed: u64,
}

impl RunRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for `label`, stable across runs and platforms.
    pub fn stream(&self, label: &str) -> ChaCha12Rng {
        let mut hasher = Sha256::new();
        hasher.update(b"cmab-al.stream.v1");
        hasher.update(self.seed.to_le_bytes());
        hasher.update(label.as_bytes());
        let digest = hasher.finalize();
        let mut seed = [0u8; 32];
        seed.copy_from_slice(&digest);
        ChaCha12Rng::from_seed(seed)
    }
}
