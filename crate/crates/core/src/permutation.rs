use std::fmt;

use crate::error::{param, Result};

/// A permutation of `{0, .., n-1}` in zero-based one-line notation.
///
/// `ranks()[i]` is the rank `σ(i)` assigned to element `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u64>);

impl Permutation {
    /// Validates that `ranks` is a rearrangement of `0..ranks.len()`.
    pub fn new(ranks: Vec<u64>) -> Result<Self> {
        if !is_permutation(&ranks) {
            return param("ranks are not a rearrangement of 0..n");
        }
        Ok(Self(ranks))
    }

    pub(crate) fn from_ranks_unchecked(ranks: Vec<u64>) -> Self {
        debug_assert!(is_permutation(&ranks));
        Self(ranks)
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n as u64).collect())
    }

    pub fn reversed(n: usize) -> Self {
        Self((0..n as u64).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ranks(&self) -> &[u64] {
        &self.0
    }

    pub fn into_ranks(self) -> Vec<u64> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &r)| r == i as u64)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u64; self.0.len()];
        for (i, &r) in self.0.iter().enumerate() {
            inv[r as usize] = i as u64;
        }
        Self(inv)
    }

    /// The product `στ`: element `i` receives rank `σ(τ(i))`.
    pub fn compose(&self, tau: &Permutation) -> Result<Self> {
        if self.len() != tau.len() {
            return param(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                tau.len()
            ));
        }
        Ok(Self(tau.0.iter().map(|&t| self.0[t as usize]).collect()))
    }

    /// Reorders `values` so that `values[i]` lands at position `σ(i)`.
    pub fn scatter<T: Clone>(&self, values: &[T]) -> Result<Vec<T>> {
        self.check_len(values.len())?;
        let mut slots: Vec<Option<T>> = vec![None; values.len()];
        for (v, &r) in values.iter().zip(&self.0) {
            slots[r as usize] = Some(v.clone());
        }
        Ok(slots.into_iter().map(|v| v.expect("rank hit twice")).collect())
    }

    /// Reads `values` through the permutation: `out[k] = values[σ(k)]`.
    pub fn gather<T: Clone>(&self, values: &[T]) -> Result<Vec<T>> {
        self.check_len(values.len())?;
        Ok(self.0.iter().map(|&r| values[r as usize].clone()).collect())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return param(format!(
                "permutation of length {} applied to {} values",
                self.len(),
                len
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Permutation").field(&self.0).finish()
    }
}

impl AsRef<[u64]> for Permutation {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for Permutation {
    type Error = crate::error::Error;

    fn try_from(ranks: Vec<u64>) -> Result<Self> {
        Self::new(ranks)
    }
}

pub fn is_permutation(ranks: &[u64]) -> bool {
    let mut seen = vec![false; ranks.len()];
    for &r in ranks {
        match seen.get_mut(r as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// Visits every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&Permutation)) {
    let mut current = Permutation::identity(n);
    loop {
        visit(&current);
        if !next_lexicographic(&mut current.0) {
            break;
        }
    }
}

fn next_lexicographic(a: &mut [u64]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
