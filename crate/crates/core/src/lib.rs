//! Sigma-properties of sections of permutation groups.
//!
//! Given `K ⊴ G ≤ S_n`, `K ≤ H ≤ G` and a partition σ of a set of primes,
//! this crate decides σ-nilpotency and σ-solubility of `G/K`, σ-subnormality
//! and σ-p-permutability of `H/K` in `G/K`, and computes the least partition
//! for which σ-nilpotency, σ-solubility or σ-p-permutability holds.
//!
//! The [`oracle`] module holds slow, definition-level certifiers for small
//! groups that the test suites compare the main algorithms against.

pub mod checks;
pub mod config;
pub mod corpus;
pub mod error;
pub mod least;
pub mod oracle;
pub mod order;
pub mod partition;
pub mod perm;
pub mod stab_chain;
pub mod toolbox;

pub use checks::{CheckReport, Witness};
pub use config::Config;
pub use error::{Error, Result};
pub use order::{Order, Prime, PrimeSet};
pub use partition::{Partition, SigmaGenerators};
pub use perm::Permutation;
pub use stab_chain::{PermGroup, StabilizerChain};

pub use toolbox::{ChiefSeries, Section};
