//! Words over GF(2) and their erasure-masked form.
//!
//! A `BitWord` is a fixed-length bit sequence indexed by coordinate rank.
//! A `MaskedWord` is the same with some positions erased: those positions
//! carry no value at all, and the text form prints `?` there.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A fixed-length binary word, bit `i` holding the symbol of the rank-`i`
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BitWord {
    /// All-zero word.
    pub fn zero(len: usize) -> Self {
        Self {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        if bit {
            self.blocks[i / 64] |= 1 << (i % 64);
        } else {
            self.blocks[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i / 64] ^= 1 << (i % 64);
    }

    /// XORs another word of the same length into this one.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "word lengths differ");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    /// Number of one bits.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Positions of one bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut word = Self::zero(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => word.set(i, true),
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character {c:?} in word (want 0 or 1)"
                    )))
                }
            }
        }
        Ok(word)
    }
}

/// A word with erased positions. Erased positions have no value; reading
/// one yields `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedWord {
    bits: BitWord,
    erased: BTreeSet<usize>,
}

impl MaskedWord {
    /// Masks the given positions of a word. Bits at masked positions are
    /// cleared so no stale value survives.
    pub fn new(word: &BitWord, erased: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = word.clone();
        let erased: BTreeSet<usize> = erased.into_iter().collect();
        if let Some(&i) = erased.iter().next_back() {
            if i >= bits.len() {
                return Err(Error::DimensionMismatch {
                    expected: bits.len(),
                    actual: i + 1,
                });
            }
        }
        for &i in &erased {
            bits.set(i, false);
        }
        Ok(Self { bits, erased })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_erased(&self, i: usize) -> bool {
        self.erased.contains(&i)
    }

    /// The value at `i`, or `None` while erased.
    pub fn known(&self, i: usize) -> Option<bool> {
        if self.is_erased(i) {
            None
        } else {
            Some(self.bits.get(i))
        }
    }

    /// Writes a repaired value, clearing the erasure at `i`.
    pub fn restore(&mut self, i: usize, bit: bool) {
        self.erased.remove(&i);
        self.bits.set(i, bit);
    }

    /// Erased positions, ascending.
    pub fn erased_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.erased.iter().copied()
    }

    pub fn erased_count(&self) -> usize {
        self.erased.len()
    }

    /// The underlying word once nothing is erased.
    pub fn to_word(&self) -> Option<BitWord> {
        if self.erased.is_empty() {
            Some(self.bits.clone())
        } else {
            None
        }
    }
}

impl fmt::Display for MaskedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(match self.known(i) {
                None => "?",
                Some(true) => "1",
                Some(false) => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MaskedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = BitWord::zero(s.chars().count());
        let mut erased = BTreeSet::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits.set(i, true),
                '?' => {
                    erased.insert(i);
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character {c:?} in word (want 0, 1, or ?)"
                    )))
                }
            }
        }
        Ok(Self { bits, erased })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_round_trip() {
        let w: BitWord = "10110".parse().unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "10110");
        assert_eq!(w.weight(), 3);
        assert_eq!(w.support(), vec![0, 2, 3]);
        assert!("10x1".parse::<BitWord>().is_err());
    }

    #[test]
    fn xor_and_flip() {
        let mut a: BitWord = "1100".parse().unwrap();
        let b: BitWord = "1010".parse().unwrap();
        a.xor_assign(&b);
        assert_eq!(a.to_string(), "0110");
        a.flip(0);
        assert_eq!(a.to_string(), "1110");
    }

    #[test]
    fn masking_clears_values() {
        let w: BitWord = "1111".parse().unwrap();
        let m = MaskedWord::new(&w, [1, 3]).unwrap();
        assert_eq!(m.to_string(), "1?1?");
        assert_eq!(m.known(0), Some(true));
        assert_eq!(m.known(1), None);
        assert!(m.to_word().is_none());
        assert!(MaskedWord::new(&w, [4]).is_err());
    }

    #[test]
    fn restore_unmasks() {
        let mut m: MaskedWord = "1?0?".parse().unwrap();
        assert_eq!(m.erased_count(), 2);
        m.restore(1, true);
        m.restore(3, false);
        assert_eq!(m.erased_count(), 0);
        assert_eq!(m.to_word().unwrap().to_string(), "1100");
    }

    #[test]
    fn masked_parse_round_trip() {
        let m: MaskedWord = "0?1?0".parse().unwrap();
        assert_eq!(m.to_string(), "0?1?0");
        assert_eq!(m.erased_positions().collect::<Vec<_>>(), vec![1, 3]);
        assert!("0!1".parse::<MaskedWord>().is_err());
    }
}
