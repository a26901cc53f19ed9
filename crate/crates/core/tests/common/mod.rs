//! Reference implementations used as independent oracles by the integration
//! and acceptance tests. Nothing here calls into the code paths it checks.
#![allow(dead_code)]

use rand::Rng;

/// Quadratic discordant-pair count, straight from the definition.
pub fn brute_kendall(a: &[u64], b: &[u64]) -> u64 {
    let n = a.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let concordant_a = a[i] < a[j];
            let concordant_b = b[i] < b[j];
            if concordant_a != concordant_b {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..n` by Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<u64>> {
    fn heap(k: usize, a: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut a: Vec<u64> = (0..n as u64).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Mean and variance of exp(-lambda * n_dis(I, σ) / C(n,2)) over all of S_n.
pub fn enumerated_kernel_moments(n: usize, lambda: f64) -> (f64, f64) {
    let identity: Vec<u64> = (0..n as u64).collect();
    let pairs = (n * (n - 1) / 2) as f64;
    let values: Vec<f64> = all_permutations(n)
        .iter()
        .map(|p| (-lambda * brute_kendall(&identity, p) as f64 / pairs).exp())
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
    (mean, var)
}

/// erf by its Maclaurin series; accurate to ~1e-15 for |x| <= 3.
pub fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    for n in 1..200 {
        term *= -x2 / n as f64;
        let contribution = term / (2 * n + 1) as f64;
        sum += contribution;
        if contribution.abs() < 1e-18 {
            break;
        }
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Sequential Fisher-Yates written out independently of the library.
pub fn oracle_shuffle<R: Rng>(n: usize, rng: &mut R) -> Vec<u64> {
    let mut v: Vec<u64> = (0..n as u64).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    v
}

pub fn is_rearrangement(v: &[u64]) -> bool {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &x)| x == i as u64)
}

pub fn quantile(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = q * (values.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    values[lo] + (values[hi] - values[lo]) * (pos - lo as f64)
}
