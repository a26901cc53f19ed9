//! Arbitrary-length shuffling by bijection and stream compaction.
//!
//! A length-`m` shuffle evaluates a bijection `f` on the padded domain
//! `[0, n)`, keeps the images below `m` in index order and gathers through
//! them. Every step is data-parallel, so the result depends only on `m` and
//! the [`ShuffleConfig`], never on how many threads ran it.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bijection::{mix64, Bijection, LcgParams, VariablePhiloxParams, DEFAULT_ROUNDS, MIN_ROUNDS};
use crate::error::{param, Error, Result};
use crate::permutation::Permutation;
use crate::scan::SCAN_CHUNK;

/// Smallest cipher width used for VariablePhilox shuffles. Below four bits the
/// round function is affine over GF(2) and reaches only a handful of
/// permutations.
pub const MIN_PHILOX_BITS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    Lcg,
    #[default]
    VariablePhilox,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Lcg => "lcg",
            Variant::VariablePhilox => "philox",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lcg" => Ok(Variant::Lcg),
            "philox" | "variable-philox" => Ok(Variant::VariablePhilox),
            other => param(format!("unknown bijection variant {other:?}")),
        }
    }
}

/// Size of the worker pool used by a shuffle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    /// The global rayon pool.
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleConfig {
    pub seed: u64,
    pub variant: Variant,
    /// Feistel rounds; ignored by the LCG variant.
    pub num_rounds: usize,
    pub workers: Workers,
}

impl Default for ShuffleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            variant: Variant::VariablePhilox,
            num_rounds: DEFAULT_ROUNDS,
            workers: Workers::Auto,
        }
    }
}

impl ShuffleConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_rounds(mut self, num_rounds: usize) -> Self {
        self.num_rounds = num_rounds;
        self
    }

    pub fn with_workers(mut self, workers: Workers) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.variant == Variant::VariablePhilox && self.num_rounds < MIN_ROUNDS {
            return param(format!(
                "VariablePhilox needs at least {MIN_ROUNDS} rounds, got {}",
                self.num_rounds
            ));
        }
        if self.workers == Workers::Fixed(0) {
            return param("worker count must be positive");
        }
        Ok(())
    }

    /// The bijection this config uses for a shuffle of length `m >= 3`.
    pub fn bijection_for(&self, m: u64) -> Result<Bijection> {
        self.validate()?;
        let bits = cipher_bits(m, self.variant);
        Ok(match self.variant {
            Variant::Lcg => LcgParams::from_seed(bits, self.seed)?.into(),
            Variant::VariablePhilox => {
                VariablePhiloxParams::new(bits, self.seed, self.num_rounds)?.into()
            }
        })
    }
}

fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

fn cipher_bits(m: u64, variant: Variant) -> u32 {
    let bits = ceil_log2(m).max(1);
    match variant {
        Variant::Lcg => bits,
        Variant::VariablePhilox => bits.max(MIN_PHILOX_BITS),
    }
}

/// Size of the padded bijection domain for a shuffle of length `m`, or `m`
/// itself for the lengths that need no cipher.
pub fn padded_domain(m: u64, variant: Variant) -> u64 {
    if m <= 2 {
        m
    } else {
        1u64 << cipher_bits(m, variant)
    }
}

/// Keeps the entries of `w` below `m`, in order.
pub fn compact_permutation(w: &Permutation, m: u64) -> Result<Permutation> {
    if m > w.len() as u64 {
        return param(format!(
            "cannot compact a permutation of length {} to length {m}",
            w.len()
        ));
    }
    let kept = w.ranks().iter().copied().filter(|&r| r < m).collect();
    Ok(Permutation::from_ranks_unchecked(kept))
}

/// Returns the permutation whose gather reorders a length-`m` input.
pub fn shuffle_indices(m: u64, config: &ShuffleConfig) -> Result<Permutation> {
    let ranks = shuffled_map(m, config, |b| b)?;
    Ok(Permutation::from_ranks_unchecked(ranks))
}

/// Shuffles `values` into a fresh buffer: `out[k] = values[σ(k)]` where `σ` is
/// [`shuffle_indices`] for the same length and config.
pub fn shuffle_values<T>(values: &[T], config: &ShuffleConfig) -> Result<Vec<T>>
where
    T: Clone + Send + Sync,
{
    shuffled_map(values.len() as u64, config, |b| values[b as usize].clone())
}

/// Like [`shuffle_values`] but writes into a caller-provided buffer of the
/// same length.
pub fn shuffle_values_into<T>(values: &[T], out: &mut [T], config: &ShuffleConfig) -> Result<()>
where
    T: Clone + Send + Sync,
{
    if out.len() != values.len() {
        return param(format!(
            "output buffer has length {}, input has {}",
            out.len(),
            values.len()
        ));
    }
    shuffled_for_each(values.len() as u64, config, out, |slot, b| {
        *slot = values[b as usize].clone()
    })
}

fn shuffled_map<T, F>(m: u64, config: &ShuffleConfig, emit: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let len = usize::try_from(m).map_err(|_| Error::Parameter(format!("length {m} does not fit in memory")))?;
    let mut out = Vec::with_capacity(len);
    shuffled_for_each(m, config, &mut out.spare_capacity_mut()[..len], |slot, b| {
        slot.write(emit(b));
    })?;
    // SAFETY: shuffled_for_each either fails before touching a slot or
    // visits every slot of out[..len] exactly once.
    unsafe { out.set_len(len) };
    Ok(out)
}

/// Calls `put(&mut out[k], σ(k))` for every output position `k`.
fn shuffled_for_each<S, P>(m: u64, config: &ShuffleConfig, out: &mut [S], put: P) -> Result<()>
where
    S: Send,
    P: Fn(&mut S, u64) + Sync,
{
    config.validate()?;
    debug_assert_eq!(out.len() as u64, m);
    match m {
        0 => return Ok(()),
        1 => {
            put(&mut out[0], 0);
            return Ok(());
        }
        2 => {
            let swap = mix64(config.seed) & 1;
            put(&mut out[0], swap);
            put(&mut out[1], swap ^ 1);
            return Ok(());
        }
        _ => {}
    }
    let bijection = config.bijection_for(m)?;
    let n = bijection.domain_size();
    let run = |out: &mut [S]| match &bijection {
        Bijection::Lcg(p) => compact_into(n, m, |x| p.apply_lanes(x), out, &put),
        Bijection::VariablePhilox(p) => compact_into(n, m, |x| p.apply_lanes(x), out, &put),
    };
    match config.workers {
        Workers::Fixed(k) if n as usize > SCAN_CHUNK => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Parameter(format!("cannot build worker pool: {e}")))?;
            pool.install(|| run(out));
        }
        _ => run(out),
    }
    Ok(())
}

/// Inputs evaluated together by the bijection.
const LANES: usize = 32;

/// Fused flag, scan and gather over chunks of the padded domain.
fn compact_into<S, B, P>(n: u64, m: u64, bijection: B, out: &mut [S], put: &P)
where
    S: Send,
    B: Fn([u64; LANES]) -> [u64; LANES] + Sync,
    P: Fn(&mut S, u64) + Sync,
{
    let chunk = SCAN_CHUNK as u64;
    let survivors: Vec<Vec<u64>> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(n);
            let expected = ((end - start) as u128 * m as u128 / n as u128) as usize;
            let mut local = Vec::with_capacity(expected + expected / 8 + LANES);
            let mut i = start;
            // n is a power of two >= 4, so chunks split evenly into lanes
            // except for tiny domains handled by the tail loop.
            while i + LANES as u64 <= end {
                let images = bijection(std::array::from_fn(|l| i + l as u64));
                let mut kept = [0u64; LANES];
                let mut count = 0;
                for b in images {
                    kept[count] = b;
                    count += (b < m) as usize;
                }
                local.extend_from_slice(&kept[..count]);
                i += LANES as u64;
            }
            while i < end {
                let b = bijection([i; LANES])[0];
                if b < m {
                    local.push(b);
                }
                i += 1;
            }
            local
        })
        .collect();

    // Splitting off each chunk's survivor count is the scan of chunk totals.
    let mut rest = out;
    let mut targets = Vec::with_capacity(survivors.len());
    for s in &survivors {
        let (head, tail) = rest.split_at_mut(s.len());
        targets.push(head);
        rest = tail;
    }
    assert!(rest.is_empty(), "bijection lost or duplicated an element");
    targets
        .into_par_iter()
        .zip(survivors.par_iter())
        .for_each(|(dst, src)| {
            for (slot, &b) in dst.iter_mut().zip(src) {
                put(slot, b);
            }
        });
}
