//! The Mallows kernel on permutations and its moments under the uniform
//! distribution.

use crate::error::{param, Result};
use crate::permutation::Permutation;

use super::kendall::kendall_distance;

/// Default kernel bandwidth.
pub const DEFAULT_LAMBDA: f64 = 5.0;

fn pairs(n: usize) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

fn check(n: usize, lambda: f64) -> Result<()> {
    if n < 2 {
        return param(format!("Mallows kernel needs n >= 2, got {n}"));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return param(format!("lambda must be finite and nonnegative, got {lambda}"));
    }
    Ok(())
}

/// `exp(-lambda * n_dis / C(n, 2))`.
pub fn mallows_kernel(sigma: &Permutation, sigma_prime: &Permutation, lambda: f64) -> Result<f64> {
    let distance = kendall_distance(sigma, sigma_prime)?;
    kernel_from_distance(distance, sigma.len(), lambda)
}

pub(crate) fn kernel_from_distance(distance: u64, n: usize, lambda: f64) -> Result<f64> {
    check(n, lambda)?;
    Ok((-lambda * distance as f64 / pairs(n)).exp())
}

/// `E[K(I, σ)]` for uniform `σ`, evaluated as a sum of logs.
pub fn mallows_expectation(n: usize, lambda: f64) -> Result<f64> {
    check(n, lambda)?;
    Ok(log_expectation(n, lambda).exp())
}

/// `Var[K(I, σ)]` for uniform `σ`: `E` at `2 lambda` minus `E^2`.
pub fn mallows_variance(n: usize, lambda: f64) -> Result<f64> {
    check(n, lambda)?;
    let second = log_expectation(n, 2.0 * lambda).exp();
    let first = log_expectation(n, lambda).exp();
    Ok((second - first * first).max(0.0))
}

// ln prod_j (1 - e^{-lambda j / C}) / (j (1 - e^{-lambda / C}))
fn log_expectation(n: usize, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let scale = lambda / pairs(n);
    let log_denominator = (-(-scale).exp_m1()).ln();
    (1..=n)
        .map(|j| {
            let j = j as f64;
            (-(-scale * j).exp_m1()).ln() - j.ln() - log_denominator
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MallowsParams {
    pub lambda: f64,
    pub n: usize,
    pub expectation: f64,
    pub variance: f64,
}

impl MallowsParams {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda,
            n,
            expectation: mallows_expectation(n, lambda)?,
            variance: mallows_variance(n, lambda)?,
        })
    }

    pub fn kernel(&self, sigma: &Permutation, sigma_prime: &Permutation) -> Result<f64> {
        if sigma.len() != self.n {
            return param(format!("expected permutations of length {}, got {}", self.n, sigma.len()));
        }
        mallows_kernel(sigma, sigma_prime, self.lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_extremes() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(mallows_kernel(&p, &p, 5.0).unwrap(), 1.0);
        for n in [2, 10, 333] {
            let k = mallows_kernel(&Permutation::identity(n), &Permutation::reversed(n), 5.0).unwrap();
            assert!((k - 0.006_737_946_999_085_467).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_is_symmetric() {
        let a = Permutation::new(vec![4, 2, 0, 1, 3]).unwrap();
        let b = Permutation::new(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(mallows_kernel(&a, &b, 5.0).unwrap(), mallows_kernel(&b, &a, 5.0).unwrap());
    }

    #[test]
    fn two_element_closed_forms() {
        let e = mallows_expectation(2, 5.0).unwrap();
        assert!((e - (1.0 + (-5.0f64).exp()) / 2.0).abs() < 1e-15);
        assert!((e - 0.503_368_973_499_542_7).abs() < 1e-12);
        let v = mallows_variance(2, 5.0).unwrap();
        let expected = (1.0 + (-10.0f64).exp()) / 2.0 - e * e;
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.246_64).abs() < 1e-5);
    }

    #[test]
    fn zero_lambda_limit() {
        assert_eq!(mallows_expectation(7, 0.0).unwrap(), 1.0);
        assert_eq!(mallows_variance(7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(mallows_expectation(1, 5.0).is_err());
        assert!(mallows_variance(5, -1.0).is_err());
        assert!(mallows_kernel(&Permutation::identity(1), &Permutation::identity(1), 5.0).is_err());
    }

    #[test]
    fn large_n_stays_in_range() {
        for n in [100, 1000, 10_000] {
            let p = MallowsParams::new(n, 5.0).unwrap();
            assert!(p.expectation > 0.0 && p.expectation <= 1.0);
            assert!(p.variance >= 0.0);
        }
    }
}
