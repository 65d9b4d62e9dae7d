//! Symbol coordinates.
//!
//! A code of dimension `m` over group size `r` indexes its symbols by
//! vectors of `m` digits, each in `0..=r`. Coordinates whose digits are all
//! strictly below `r` hold information symbols; the rest hold parity.
//!
//! The canonical rank of a coordinate is its mixed-radix value with the
//! first digit most significant, which orders coordinates lexicographically
//! and fixes row, column, and symbol order in every external format.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::CodeParams;

/// A point of `Z_{r+1}^m` addressing one code symbol.
///
/// Ordering is derived from the digit vector, which coincides with rank
/// order under the canonical mixed-radix ranking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(Vec<u32>);

impl Coord {
    /// The digits, first axis first.
    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    /// Digit on a 1-based axis.
    pub fn digit(&self, axis: usize) -> u32 {
        self.0[axis - 1]
    }

    /// Number of axes.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty digit vector (never produced by a valid code).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replaces the digit on a 1-based axis, returning a new coordinate.
    pub fn with_digit(&self, axis: usize, digit: u32) -> Self {
        let mut digits = self.0.clone();
        digits[axis - 1] = digit;
        Self(digits)
    }
}

impl fmt::Display for Coord {
    /// Comma-joined digits, e.g. `0,2,1`. Code-aware formatting that
    /// prefers the compact form lives in [`CodeParams::coord_token`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl CodeParams {
    /// Validates a digit vector as a coordinate of this code.
    pub fn coord(&self, digits: &[u32]) -> Result<Coord> {
        if digits.len() != self.m() as usize {
            return Err(Error::InvalidCoord(format!(
                "expected {} digits, got {}",
                self.m(),
                digits.len()
            )));
        }
        if let Some(d) = digits.iter().find(|&&d| d > self.r()) {
            return Err(Error::InvalidCoord(format!(
                "digit {d} exceeds r = {}",
                self.r()
            )));
        }
        Ok(Coord(digits.to_vec()))
    }

    /// Canonical rank: the mixed-radix value of the digits in base `r+1`,
    /// first digit most significant. Bijective onto `0..n`.
    pub fn coord_rank(&self, a: &Coord) -> Result<usize> {
        if a.len() != self.m() as usize {
            return Err(Error::InvalidCoord(format!(
                "expected {} digits, got {}",
                self.m(),
                a.len()
            )));
        }
        let base = self.r() as usize + 1;
        let mut rank = 0usize;
        for &d in a.digits() {
            if d > self.r() {
                return Err(Error::InvalidCoord(format!(
                    "digit {d} exceeds r = {}",
                    self.r()
                )));
            }
            rank = rank * base + d as usize;
        }
        Ok(rank)
    }

    /// Inverse of [`coord_rank`](Self::coord_rank).
    pub fn coord_at(&self, rank: usize) -> Result<Coord> {
        if rank >= self.n() {
            return Err(Error::InvalidCoord(format!(
                "rank {rank} out of range for code length {}",
                self.n()
            )));
        }
        let base = self.r() as usize + 1;
        let mut digits = vec![0u32; self.m() as usize];
        let mut rest = rank;
        for d in digits.iter_mut().rev() {
            *d = (rest % base) as u32;
            rest /= base;
        }
        Ok(Coord(digits))
    }

    /// All coordinates in rank order.
    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.n()).map(|rank| self.coord_at(rank).expect("rank in range"))
    }

    /// True if every digit is below `r` (the coordinate holds an
    /// information symbol).
    pub fn is_info_coord(&self, a: &Coord) -> bool {
        a.digits().iter().all(|&d| d < self.r())
    }

    /// Canonical text form: undelimited digits when `r <= 8` (so every
    /// digit is a single character), comma-joined otherwise.
    pub fn coord_token(&self, a: &Coord) -> String {
        if self.r() <= 8 {
            a.digits().iter().map(|d| d.to_string()).collect()
        } else {
            a.to_string()
        }
    }

    /// Parses a coordinate token, accepting both the comma-joined and the
    /// compact form (the latter only when `r <= 8`, where it is unambiguous).
    pub fn parse_coord(&self, token: &str) -> Result<Coord> {
        let token = token.trim();
        if token.is_empty() {
            return Err(Error::InvalidCoord("empty coordinate token".into()));
        }
        let digits: Vec<u32> = if token.contains(',') {
            token
                .split(',')
                .map(|part| {
                    part.trim().parse::<u32>().map_err(|_| {
                        Error::InvalidCoord(format!("bad digit {part:?} in {token:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else if self.r() <= 8 && self.m() > 1 {
            token
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidCoord(format!("bad digit {c:?} in {token:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            vec![token
                .parse::<u32>()
                .map_err(|_| Error::InvalidCoord(format!("bad digit {token:?}")))?]
        };
        self.coord(&digits)
    }
}
