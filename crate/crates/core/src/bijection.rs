//! Pseudo-random bijections on `[0, 2^w)`.
//!
//! Two families are provided: a linear congruential map `x -> a*x + c mod 2^w`
//! and `VariablePhilox`, a Philox-style Feistel cipher that works for any bit
//! width, odd widths included. Both are pure functions of their parameters, so
//! every index can be evaluated independently on any thread.

use crate::error::{param, Error, Result};

/// Multiplier of the Philox round function.
pub const PHILOX_M0: u64 = 0xD2B7_4407_B1CE_6E93;

/// Default number of Feistel rounds.
pub const DEFAULT_ROUNDS: usize = 24;

/// Minimum number of rounds for a pseudo-random permutation (Luby-Rackoff).
pub const MIN_ROUNDS: usize = 3;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives one 32-bit key per round from a 64-bit seed.
///
/// Key `i` is the low half of `mix64(seed + (i + 1) * 0x9E3779B97F4A7C15)`.
pub fn derive_round_keys(seed: u64, num_rounds: usize) -> Vec<u32> {
    (0..num_rounds as u64)
        .map(|i| mix64(seed.wrapping_add((i + 1).wrapping_mul(GOLDEN_GAMMA))) as u32)
        .collect()
}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd `a` modulo 2^64 by Newton iteration.
fn odd_inverse(a: u64) -> u64 {
    debug_assert!(a & 1 == 1);
    // a*a == 1 mod 8, so the seed is correct to 3 bits; each step doubles that.
    let mut inv = a;
    for _ in 0..5 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(inv)));
    }
    inv
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcgParams {
    modulus_bits: u32,
    a: u64,
    c: u64,
}

impl LcgParams {
    pub fn new(modulus_bits: u32, a: u64, c: u64) -> Result<Self> {
        if !(1..=63).contains(&modulus_bits) {
            return param(format!("LCG modulus_bits must be in 1..=63, got {modulus_bits}"));
        }
        let mask = low_mask(modulus_bits);
        if a & 1 == 0 {
            return param(format!("LCG multiplier {a} must be odd"));
        }
        if a > mask || c > mask {
            return param(format!(
                "LCG constants a={a}, c={c} must be below 2^{modulus_bits}"
            ));
        }
        Ok(Self { modulus_bits, a, c })
    }

    /// Seed-derived parameters: `a = mix64(seed) | 1`, `c = mix64(seed + 1)`,
    /// both reduced modulo `2^modulus_bits`.
    pub fn from_seed(modulus_bits: u32, seed: u64) -> Result<Self> {
        if !(1..=63).contains(&modulus_bits) {
            return param(format!("LCG modulus_bits must be in 1..=63, got {modulus_bits}"));
        }
        let mask = low_mask(modulus_bits);
        let a = (mix64(seed) | 1) & mask;
        let c = mix64(seed.wrapping_add(1)) & mask;
        Self::new(modulus_bits, a, c)
    }

    pub fn modulus_bits(&self) -> u32 {
        self.modulus_bits
    }

    pub fn multiplier(&self) -> u64 {
        self.a
    }

    pub fn increment(&self) -> u64 {
        self.c
    }

    pub fn domain_size(&self) -> u64 {
        1u64 << self.modulus_bits
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, x: u64) -> u64 {
        self.a.wrapping_mul(x).wrapping_add(self.c) & low_mask(self.modulus_bits)
    }

    #[inline]
    pub(crate) fn apply_lanes<const LANES: usize>(&self, x: [u64; LANES]) -> [u64; LANES] {
        x.map(|v| self.apply_unchecked(v))
    }

    pub fn apply(&self, x: u64) -> Result<u64> {
        check_domain(x, self.modulus_bits)?;
        Ok(self.apply_unchecked(x))
    }
}

/// Parameters of the VariablePhilox cipher on `total_bits`-bit integers.
///
/// The input splits into a left half of `floor(total_bits / 2)` bits and a
/// right half holding the rest. When `total_bits` is odd the right half carries
/// one extra bit, which each round rotates into the low end of the new right
/// half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariablePhiloxParams {
    total_bits: u32,
    left_side_bits: u32,
    right_side_bits: u32,
    left_side_mask: u64,
    right_side_mask: u64,
    round_keys: Vec<u32>,
}

impl VariablePhiloxParams {
    pub fn new(total_bits: u32, seed: u64, num_rounds: usize) -> Result<Self> {
        if num_rounds < MIN_ROUNDS {
            return param(format!(
                "VariablePhilox needs at least {MIN_ROUNDS} rounds, got {num_rounds}"
            ));
        }
        Self::with_round_keys(total_bits, derive_round_keys(seed, num_rounds))
    }

    /// Builds a cipher from explicit round keys. Any number of keys is
    /// accepted, including zero (the identity map).
    pub fn with_round_keys(total_bits: u32, round_keys: Vec<u32>) -> Result<Self> {
        if !(2..=63).contains(&total_bits) {
            return param(format!(
                "VariablePhilox total_bits must be in 2..=63, got {total_bits}"
            ));
        }
        let left_side_bits = total_bits / 2;
        let right_side_bits = total_bits - left_side_bits;
        Ok(Self {
            total_bits,
            left_side_bits,
            right_side_bits,
            left_side_mask: low_mask(left_side_bits),
            right_side_mask: low_mask(right_side_bits),
            round_keys,
        })
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn left_side_bits(&self) -> u32 {
        self.left_side_bits
    }

    pub fn right_side_bits(&self) -> u32 {
        self.right_side_bits
    }

    pub fn num_rounds(&self) -> usize {
        self.round_keys.len()
    }

    pub fn round_keys(&self) -> &[u32] {
        &self.round_keys
    }

    pub fn domain_size(&self) -> u64 {
        1u64 << self.total_bits
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, x: u64) -> u64 {
        let odd_bits = self.right_side_bits - self.left_side_bits;
        let left_mask = self.left_side_mask as u32;
        let right_mask = self.right_side_mask as u32;
        let mut state = [(x >> self.right_side_bits) as u32, (x & self.right_side_mask) as u32];
        for &key in &self.round_keys {
            let product = PHILOX_M0.wrapping_mul(state[0] as u64);
            let hi = (product >> 32) as u32;
            let lo = product as u32;
            let lo = (lo << odd_bits) | (state[1] >> self.left_side_bits);
            state[0] = ((hi ^ key) ^ state[1]) & left_mask;
            state[1] = lo & right_mask;
        }
        ((state[0] as u64) << self.right_side_bits) | state[1] as u64
    }

    /// Evaluates `LANES` independent inputs round by round so their
    /// dependency chains overlap.
    #[inline]
    pub(crate) fn apply_lanes<const LANES: usize>(&self, x: [u64; LANES]) -> [u64; LANES] {
        if self.right_side_bits > self.left_side_bits {
            self.lanes_impl::<LANES, true>(x)
        } else {
            self.lanes_impl::<LANES, false>(x)
        }
    }

    // Same rounds as apply_unchecked. With one odd bit, `right >> left_bits`
    // is the single bit above the left mask, i.e. `right > left_mask`; this
    // keeps every shift count a constant so the lanes vectorize.
    #[inline]
    fn lanes_impl<const LANES: usize, const ODD: bool>(&self, x: [u64; LANES]) -> [u64; LANES] {
        let left_mask = self.left_side_mask as u32;
        let right_mask = self.right_side_mask as u32;
        let mut left = [0u32; LANES];
        let mut right = [0u32; LANES];
        for l in 0..LANES {
            left[l] = (x[l] >> self.right_side_bits) as u32;
            right[l] = (x[l] & self.right_side_mask) as u32;
        }
        for &key in &self.round_keys {
            for l in 0..LANES {
                let product = PHILOX_M0.wrapping_mul(left[l] as u64);
                let hi = (product >> 32) as u32;
                let lo = if ODD {
                    ((product as u32) << 1) | (right[l] > left_mask) as u32
                } else {
                    product as u32
                };
                left[l] = ((hi ^ key) ^ right[l]) & left_mask;
                right[l] = lo & right_mask;
            }
        }
        let mut out = [0u64; LANES];
        for l in 0..LANES {
            out[l] = ((left[l] as u64) << self.right_side_bits) | right[l] as u64;
        }
        out
    }

    #[inline]
    pub(crate) fn invert_unchecked(&self, y: u64) -> u64 {
        let odd_bits = self.right_side_bits - self.left_side_bits;
        let odd_mask = (1u32 << odd_bits) - 1;
        let left_mask = self.left_side_mask as u32;
        // Only the low left_side_bits of the product feed the bijective half.
        let m0_inverse = odd_inverse(PHILOX_M0);
        let mut state = [(y >> self.right_side_bits) as u32, (y & self.right_side_mask) as u32];
        for &key in self.round_keys.iter().rev() {
            let carried = state[1] & odd_mask;
            let mixed_left = (state[1] >> odd_bits) & left_mask;
            let left = (m0_inverse.wrapping_mul(mixed_left as u64) as u32) & left_mask;
            let hi = (PHILOX_M0.wrapping_mul(left as u64) >> 32) as u32;
            let right_low = (state[0] ^ hi ^ key) & left_mask;
            state = [left, (carried << self.left_side_bits) | right_low];
        }
        ((state[0] as u64) << self.right_side_bits) | state[1] as u64
    }

    pub fn apply(&self, x: u64) -> Result<u64> {
        check_domain(x, self.total_bits)?;
        Ok(self.apply_unchecked(x))
    }

    pub fn invert(&self, y: u64) -> Result<u64> {
        check_domain(y, self.total_bits)?;
        Ok(self.invert_unchecked(y))
    }
}

fn check_domain(x: u64, bits: u32) -> Result<()> {
    if x > low_mask(bits) {
        return Err(Error::Domain {
            value: x,
            size: 1u64 << bits,
        });
    }
    Ok(())
}

/// A bijection on `[0, 2^domain_bits)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bijection {
    Lcg(LcgParams),
    VariablePhilox(VariablePhiloxParams),
}

impl Bijection {
    pub fn domain_bits(&self) -> u32 {
        match self {
            Bijection::Lcg(p) => p.modulus_bits(),
            Bijection::VariablePhilox(p) => p.total_bits(),
        }
    }

    pub fn domain_size(&self) -> u64 {
        1u64 << self.domain_bits()
    }

    pub fn apply(&self, x: u64) -> Result<u64> {
        match self {
            Bijection::Lcg(p) => p.apply(x),
            Bijection::VariablePhilox(p) => p.apply(x),
        }
    }
}

impl From<LcgParams> for Bijection {
    fn from(p: LcgParams) -> Self {
        Bijection::Lcg(p)
    }
}

impl From<VariablePhiloxParams> for Bijection {
    fn from(p: VariablePhiloxParams) -> Self {
        Bijection::VariablePhilox(p)
    }
}
