//! Deterministic, work-efficient parallel random shuffling.
//!
//! A shuffle of length `m` evaluates a pseudo-random bijection on the next
//! power of two `n >= m`, discards the images that fall outside `[0, m)` with
//! a parallel exclusive scan and gathers the input through the survivors. The
//! output depends only on the seed and the configuration, not on the number of
//! threads.
//!
//! ```
//! use bijective_shuffle::{shuffle_values, ShuffleConfig};
//!
//! let deck: Vec<u32> = (0..52).collect();
//! let shuffled = shuffle_values(&deck, &ShuffleConfig::new(7)).unwrap();
//! assert_eq!(shuffled, shuffle_values(&deck, &ShuffleConfig::new(7)).unwrap());
//! let mut sorted = shuffled.clone();
//! sorted.sort();
//! assert_eq!(sorted, deck);
//! ```
//!
//! The [`stats`] module checks shuffles for uniformity with a chi-squared
//! test over all 120 permutations of five elements and with a Mallows-kernel
//! MMD test that scales to long permutations. [`bench`] measures throughput
//! against gather, sort-based and Fisher-Yates baselines.

pub mod bench;
pub mod bijection;
pub mod cli;
pub mod error;
pub mod permutation;
pub mod scan;
pub mod shuffle;
pub mod stats;

pub use bijection::{derive_round_keys, Bijection, LcgParams, VariablePhiloxParams};
pub use error::{Error, Result};
pub use permutation::Permutation;
pub use scan::exclusive_scan;
pub use shuffle::{
    compact_permutation, padded_domain, shuffle_indices, shuffle_values, shuffle_values_into, ShuffleConfig,
    Variant, Workers,
};
