// MMD test against the uniform distribution, including a custom sampler.
//
// ```bash
// cargo run --release --example uniformity_mmd
// ```

use bijective_shuffle::stats::{mmd_test, BijectiveSampler, MmdThreshold};
use bijective_shuffle::{Permutation, ShuffleConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The classic mistake: swap each slot with any slot, not just the ones after it.
fn naive_shuffle(n: usize, index: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(index);
    let mut ranks: Vec<u64> = (0..n as u64).collect();
    for i in 0..n {
        ranks.swap(i, rng.random_range(0..n));
    }
    Permutation::new(ranks).expect("swaps keep a permutation")
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bijective = BijectiveSampler::new(ShuffleConfig::new(0))?;
    for n in [5, 100] {
        for kind in [MmdThreshold::Hoeffding, MmdThreshold::Normal] {
            let good = mmd_test(&bijective, n, 10_000, 0.05, 5.0, kind)?;
            let naive = mmd_test(&naive_shuffle, n, 10_000, 0.05, 5.0, kind)?;
            println!(
                "n = {n:>3} {kind:?}: threshold {:.2e}, bijective {:+.2e} ({}), naive {:+.2e} ({})",
                good.threshold,
                good.statistic,
                if good.pass { "pass" } else { "FAIL" },
                naive.statistic,
                if naive.pass { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
