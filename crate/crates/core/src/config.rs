use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Desk-scale limits and sampling budgets shared by every computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest index `|G:H|` for which the coset action is built (core computation).
    /// The action's stabilizer chain stores transversals over the cosets, so
    /// memory grows with the square of this bound.
    pub index_cap: u64,
    /// Largest group or quotient that is enumerated element by element.
    pub enum_cap: u64,
    /// Random elements drawn when a quotient is too large to scan.
    pub sample_count: usize,
    /// Fresh random elements used to re-check each sampled chief factor.
    pub recheck_count: usize,
    /// Attempts at extending a p-subgroup before giving up on a Sylow search.
    pub sylow_retries: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            index_cap: 5_000,
            enum_cap: 100_000,
            sample_count: 10_000,
            recheck_count: 100,
            sylow_retries: 20_000,
            seed: 0x5167_6d61,
        }
    }
}

impl Config {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
