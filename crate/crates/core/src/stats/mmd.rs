//! One-sample maximum mean discrepancy test against the uniform distribution
//! on permutations, using the Mallows kernel.
//!
//! Right-invariance of the kernel makes the cross term of MMD² equal to the
//! closed-form expectation `E[K(I, σ)]`, so the estimator only needs kernel
//! values between disjoint consecutive sample pairs.

use rayon::prelude::*;

use crate::error::{param, Result};
use crate::permutation::Permutation;

use super::kendall::kendall_distance;
use super::mallows::{kernel_from_distance, mallows_expectation, mallows_variance};
use super::sampler::PermutationSource;
use super::special::erf_inv;
use super::{TestKind, TestReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmdThreshold {
    Hoeffding,
    Normal,
}

/// Unbiased MMD² estimate of `samples` against the uniform distribution.
pub fn mmd2_estimate(samples: &[Permutation], lambda: f64) -> Result<f64> {
    if samples.is_empty() || !samples.len().is_multiple_of(2) {
        return param(format!(
            "MMD needs a positive even number of samples, got {}",
            samples.len()
        ));
    }
    let n = samples[0].len();
    if samples.iter().any(|s| s.len() != n) {
        return param("MMD samples have mixed lengths");
    }
    let kernels = samples
        .par_chunks(2)
        .map(|pair| kernel_from_distance(kendall_distance(&pair[0], &pair[1])?, n, lambda))
        .collect::<Result<Vec<f64>>>()?;
    finish_estimate(&kernels, n, lambda)
}

fn finish_estimate(kernels: &[f64], n: usize, lambda: f64) -> Result<f64> {
    let mean = kernels.iter().sum::<f64>() / kernels.len() as f64;
    Ok(mean - mallows_expectation(n, lambda)?)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return param(format!("alpha must lie in (0, 1], got {alpha}"));
    }
    Ok(())
}

fn check_sample_size(sample_size: usize) -> Result<()> {
    if sample_size < 2 || !sample_size.is_multiple_of(2) {
        return param(format!("sample size must be even and >= 2, got {sample_size}"));
    }
    Ok(())
}

/// Distribution-free acceptance bound `sqrt(ln(2 / alpha) / |Π|)`.
pub fn hoeffding_threshold(alpha: f64, sample_size: usize) -> Result<f64> {
    check_alpha(alpha)?;
    check_sample_size(sample_size)?;
    Ok(((2.0 / alpha).ln() / sample_size as f64).sqrt())
}

/// Asymptotic acceptance bound `sqrt(2 Var) erf⁻¹(1 - alpha)` with
/// `Var = 2 Var(K) / |Π|`.
pub fn normal_threshold(alpha: f64, n: usize, lambda: f64, sample_size: usize) -> Result<f64> {
    check_alpha(alpha)?;
    check_sample_size(sample_size)?;
    let estimate_variance = 2.0 * mallows_variance(n, lambda)? / sample_size as f64;
    Ok((2.0 * estimate_variance).sqrt() * erf_inv(1.0 - alpha)?)
}

/// Draws `num_samples` permutations of length `n` and tests them for
/// uniformity.
pub fn mmd_test<S: PermutationSource + ?Sized>(
    source: &S,
    n: usize,
    num_samples: usize,
    alpha: f64,
    lambda: f64,
    kind: MmdThreshold,
) -> Result<TestReport> {
    check_sample_size(num_samples)?;
    let threshold = match kind {
        MmdThreshold::Hoeffding => hoeffding_threshold(alpha, num_samples)?,
        MmdThreshold::Normal => normal_threshold(alpha, n, lambda, num_samples)?,
    };
    let kernels = (0..num_samples as u64 / 2)
        .into_par_iter()
        .map(|i| {
            let a = source.draw(n, 2 * i);
            let b = source.draw(n, 2 * i + 1);
            if a.len() != n || b.len() != n {
                return param(format!("source produced a permutation of the wrong length, wanted {n}"));
            }
            kernel_from_distance(kendall_distance(&a, &b)?, n, lambda)
        })
        .collect::<Result<Vec<f64>>>()?;
    let statistic = finish_estimate(&kernels, n, lambda)?;
    let test_kind = match kind {
        MmdThreshold::Hoeffding => TestKind::MmdHoeffding,
        MmdThreshold::Normal => TestKind::MmdNormal,
    };
    Ok(TestReport::new(test_kind, statistic, threshold, alpha, num_samples))
}
