//! Code parameters.
//!
//! A code instance is determined by two integers: the local repair group
//! size `r` and the product dimension `m`. Everything else (length,
//! dimension, erasure tolerance) follows from those two.

use crate::error::{Error, Result};

/// Default cap on the code length `(r+1)^m`, so that accidental
/// `lrc params -r 100 -m 9` style inputs fail fast instead of allocating.
pub const DEFAULT_SYMBOL_LIMIT: u64 = 1 << 20;

/// Parameters of the m-fold product of [r+1, r] single parity check codes.
///
/// Only `r` and `m` are stored; the derived quantities are computed on
/// demand so they can never disagree with the stored values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    r: u32,
    m: u32,
}

impl CodeParams {
    /// Creates parameters, enforcing `r >= 2`, `m >= 1`, and a code length
    /// of at most [`DEFAULT_SYMBOL_LIMIT`].
    pub fn new(r: u32, m: u32) -> Result<Self> {
        Self::with_symbol_limit(r, m, DEFAULT_SYMBOL_LIMIT)
    }

    /// Creates parameters with a caller-chosen cap on the code length.
    pub fn with_symbol_limit(r: u32, m: u32, limit: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!(
                "r must be at least 2, got {r}"
            )));
        }
        if m < 1 {
            return Err(Error::InvalidParams(format!(
                "m must be at least 1, got {m}"
            )));
        }
        let n = (u128::from(r) + 1)
            .checked_pow(m)
            .filter(|&n| n <= u128::from(limit));
        if n.is_none() {
            return Err(Error::InvalidParams(format!(
                "code length (r+1)^m = {}^{m} exceeds the limit of {limit} symbols",
                u64::from(r) + 1
            )));
        }
        Ok(Self { r, m })
    }

    /// Local repair group size: every symbol is recoverable from `r` others.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Product dimension, which is also the availability: every symbol has
    /// `m` pairwise disjoint repair groups.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Code length `(r+1)^m`.
    pub fn n(&self) -> usize {
        (self.r as usize + 1).pow(self.m)
    }

    /// Code dimension `r^m`.
    pub fn k(&self) -> usize {
        (self.r as usize).pow(self.m)
    }

    /// Number of parity symbols `n - k`.
    pub fn parity_count(&self) -> usize {
        self.n() - self.k()
    }

    /// Erasure tolerance `2^m - 1`: every erasure pattern of at most this
    /// size is repairable one symbol at a time, and some pattern of size
    /// `2^m` is not.
    pub fn t(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Rate `k / n`.
    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }
}
