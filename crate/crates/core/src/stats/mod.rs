//! Statistical checks that shuffles produce uniformly distributed
//! permutations.

pub mod chi_squared;
pub mod kendall;
pub mod mallows;
pub mod mmd;
pub mod sampler;
pub mod special;

use serde::{Deserialize, Serialize};

pub use chi_squared::{chi_squared_test, chi_squared_threshold, permutation_rank};
pub use kendall::kendall_distance;
pub use mallows::{mallows_expectation, mallows_kernel, mallows_variance, MallowsParams, DEFAULT_LAMBDA};
pub use mmd::{hoeffding_threshold, mmd2_estimate, mmd_test, normal_threshold, MmdThreshold};
pub use sampler::{BijectiveSampler, FisherYatesSampler, IdentitySampler, PermutationSource};
pub use special::erf_inv;

/// Default significance level.
pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    ChiSquared,
    MmdHoeffding,
    MmdNormal,
}

/// Outcome of one uniformity test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test_kind: TestKind,
    pub statistic: f64,
    pub threshold: f64,
    pub alpha: f64,
    pub sample_size: usize,
    pub pass: bool,
}

impl TestReport {
    /// MMD statistics pass when `|statistic| < threshold`, chi-squared when
    /// `statistic < threshold`.
    pub fn new(test_kind: TestKind, statistic: f64, threshold: f64, alpha: f64, sample_size: usize) -> Self {
        let pass = match test_kind {
            TestKind::ChiSquared => statistic < threshold,
            TestKind::MmdHoeffding | TestKind::MmdNormal => statistic.abs() < threshold,
        };
        Self {
            test_kind,
            statistic,
            threshold,
            alpha,
            sample_size,
            pass,
        }
    }
}
