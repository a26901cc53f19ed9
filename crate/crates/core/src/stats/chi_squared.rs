use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::permutation::Permutation;

use super::sampler::PermutationSource;
use super::special::chi_squared_quantile;
use super::{TestKind, TestReport};

/// Permutation length histogrammed by [`chi_squared_test`].
pub const CHI_SQUARED_LENGTH: usize = 5;

/// Number of cells, `5! = 120`.
pub const CHI_SQUARED_CELLS: usize = 120;

/// Smallest sample count giving at least 100 expected hits per cell.
pub const CHI_SQUARED_MIN_SAMPLES: usize = 100 * CHI_SQUARED_CELLS;

/// Lexicographic rank (Lehmer code) of a permutation, in `[0, n!)`.
pub fn permutation_rank(sigma: &Permutation) -> Result<u64> {
    let n = sigma.len();
    if n > 20 {
        return Err(Error::Overflow(n));
    }
    let ranks = sigma.ranks();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller_after = ranks[i + 1..].iter().filter(|&&r| r < ranks[i]).count() as u64;
        rank = rank * (n - i) as u64 + smaller_after;
    }
    Ok(rank)
}

/// Upper `alpha` critical value of the chi-squared distribution.
pub fn chi_squared_threshold(alpha: f64, dof: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return param(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    chi_squared_quantile(1.0 - alpha, dof as f64)
}

/// Pearson statistic of `counts` against equal expected counts.
pub fn chi_squared_statistic(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Goodness-of-fit test of length-5 permutations against the uniform
/// distribution over all 120 of them (119 degrees of freedom).
pub fn chi_squared_test<S: PermutationSource + ?Sized>(
    source: &S,
    num_samples: usize,
    alpha: f64,
) -> Result<TestReport> {
    if num_samples < CHI_SQUARED_MIN_SAMPLES {
        return param(format!(
            "chi-squared test needs at least {CHI_SQUARED_MIN_SAMPLES} samples, got {num_samples}"
        ));
    }
    let threshold = chi_squared_threshold(alpha, CHI_SQUARED_CELLS - 1)?;
    let cells = (0..num_samples as u64)
        .into_par_iter()
        .map(|k| {
            let p = source.draw(CHI_SQUARED_LENGTH, k);
            if p.len() != CHI_SQUARED_LENGTH {
                return param(format!(
                    "chi-squared test needs permutations of length {CHI_SQUARED_LENGTH}, got {}",
                    p.len()
                ));
            }
            permutation_rank(&p)
        })
        .collect::<Result<Vec<u64>>>()?;
    let mut counts = [0u64; CHI_SQUARED_CELLS];
    for c in cells {
        counts[c as usize] += 1;
    }
    let statistic = chi_squared_statistic(&counts);
    Ok(TestReport::new(TestKind::ChiSquared, statistic, threshold, alpha, num_samples))
}
