use crate::error::{param, Result};
use crate::permutation::Permutation;

/// Number of discordant pairs between two permutations, in O(n log n).
///
/// Positions are relabelled by the ranks of `sigma`, after which the
/// discordant pairs are exactly the inversions of `sigma_prime` read in that
/// order.
pub fn kendall_distance(sigma: &Permutation, sigma_prime: &Permutation) -> Result<u64> {
    if sigma.len() != sigma_prime.len() {
        return param(format!(
            "kendall distance needs equal lengths, got {} and {}",
            sigma.len(),
            sigma_prime.len()
        ));
    }
    let mut relabelled = vec![0u64; sigma.len()];
    for (&r, &r_prime) in sigma.ranks().iter().zip(sigma_prime.ranks()) {
        relabelled[r as usize] = r_prime;
    }
    Ok(count_inversions(&mut relabelled))
}

/// Counts pairs `i < j` with `values[i] > values[j]`, sorting `values`.
pub fn count_inversions(values: &mut [u64]) -> u64 {
    let mut scratch = vec![0u64; values.len()];
    merge_count(values, &mut scratch)
}

fn merge_count(values: &mut [u64], scratch: &mut [u64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    if n <= 16 {
        // insertion sort: each shift is one inversion
        let mut inversions = 0;
        for i in 1..n {
            let v = values[i];
            let mut j = i;
            while j > 0 && values[j - 1] > v {
                values[j] = values[j - 1];
                j -= 1;
            }
            inversions += (i - j) as u64;
            values[j] = v;
        }
        return inversions;
    }
    let mid = n / 2;
    let (left_scratch, right_scratch) = scratch.split_at_mut(mid);
    let mut inversions = {
        let (left, right) = values.split_at_mut(mid);
        merge_count(left, left_scratch) + merge_count(right, right_scratch)
    };

    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if values[i] <= values[j] {
            scratch[k] = values[i];
            i += 1;
        } else {
            scratch[k] = values[j];
            inversions += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&values[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&values[j..n]);
    values.copy_from_slice(&scratch[..n]);
    inversions
}
