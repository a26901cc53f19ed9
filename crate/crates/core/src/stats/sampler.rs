//! Counter-addressed sources of random permutations for the uniformity tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::permutation::Permutation;
use crate::shuffle::{shuffle_indices, ShuffleConfig};

/// A source of permutations addressed by sample index.
///
/// `draw(n, k)` must depend only on `(n, k)` and the source's own state, so
/// samples can be produced in parallel in any order.
pub trait PermutationSource: Sync {
    fn draw(&self, n: usize, index: u64) -> Permutation;
}

impl<F> PermutationSource for F
where
    F: Fn(usize, u64) -> Permutation + Sync,
{
    fn draw(&self, n: usize, index: u64) -> Permutation {
        self(n, index)
    }
}

/// Bijective shuffles with seed `base_seed + index`.
#[derive(Debug, Clone)]
pub struct BijectiveSampler {
    config: ShuffleConfig,
}

impl BijectiveSampler {
    pub fn new(config: ShuffleConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }
}

impl PermutationSource for BijectiveSampler {
    fn draw(&self, n: usize, index: u64) -> Permutation {
        let config = self.config.clone().with_seed(self.config.seed.wrapping_add(index));
        shuffle_indices(n as u64, &config).expect("validated shuffle config")
    }
}

/// Sequential Fisher-Yates on a ChaCha8 stream per sample.
#[derive(Debug, Clone, Copy)]
pub struct FisherYatesSampler {
    pub seed: u64,
}

impl FisherYatesSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }
}

impl PermutationSource for FisherYatesSampler {
    fn draw(&self, n: usize, index: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let mut ranks: Vec<u64> = (0..n as u64).collect();
        fisher_yates(&mut ranks, &mut rng);
        Permutation::new(ranks).expect("swaps preserve a permutation")
    }
}

/// Always the identity: a maximally non-uniform source.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentitySampler;

impl PermutationSource for IdentitySampler {
    fn draw(&self, n: usize, _index: u64) -> Permutation {
        Permutation::identity(n)
    }
}

/// In-place Fisher-Yates (Durstenfeld) shuffle.
pub fn fisher_yates<T, R: Rng + ?Sized>(values: &mut [T], rng: &mut R) {
    for i in (1..values.len()).rev() {
        let j = rng.random_range(0..=i);
        values.swap(i, j);
    }
}
