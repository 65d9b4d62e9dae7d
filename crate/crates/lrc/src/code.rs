//! The code itself: local repair groups, the parity check matrix, and
//! systematic encoding.
//!
//! Symbols live on the grid `Z_{r+1}^m`. Points with every digit below `r`
//! carry information; each remaining point `a` carries the parity of the
//! information symbols in its group `L(a)`, the information points that
//! agree with `a` wherever `a`'s digit is below `r`. One parity check per
//! parity point, with support `L(a) ∪ {a}`, defines the code. Every
//! axis-aligned line of r+1 points then sums to zero, which is what makes
//! single-symbol repair local: any symbol is the XOR of the other r
//! symbols on any line through it.

use std::fmt;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::params::CodeParams;
use crate::word::BitWord;

impl CodeParams {
    /// Rank step of each 1-based axis: changing the digit on axis `i` by
    /// one changes the rank by `strides[i-1]`.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let base = self.r() as usize + 1;
        let m = self.m() as usize;
        let mut strides = vec![1usize; m];
        for j in (0..m.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * base;
        }
        strides
    }

    /// Digit of the rank-`rank` coordinate on 1-based axis `axis`.
    pub(crate) fn digit_at(&self, rank: usize, axis: usize) -> u32 {
        let base = self.r() as usize + 1;
        let stride = base.pow(self.m() - axis as u32);
        (rank / stride % base) as u32
    }

    /// True if no digit of the rank-`rank` coordinate equals r.
    pub(crate) fn is_info_rank(&self, rank: usize) -> bool {
        let base = self.r() as usize + 1;
        let r = self.r() as usize;
        let mut rest = rank;
        while rest > 0 {
            if rest % base == r {
                return false;
            }
            rest /= base;
        }
        true
    }

    /// Ranks of the group `L(a)` of the parity coordinate with the given
    /// rank, appended to `out` in ascending order.
    pub(crate) fn l_set_ranks_into(&self, rank: usize, out: &mut Vec<usize>) {
        let r = self.r() as usize;
        let strides = self.strides();
        let mut free: Vec<usize> = Vec::new();
        let mut base_rank = rank;
        for (j, &stride) in strides.iter().enumerate() {
            if self.digit_at(rank, j + 1) as usize == r {
                free.push(stride);
                base_rank -= r * stride;
            }
        }
        // Odometer over the freed axes, most significant first, so ranks
        // come out ascending.
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut value = base_rank;
            for (d, stride) in digits.iter().zip(&free) {
                value += d * stride;
            }
            out.push(value);
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < r {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// Axes (1-based, ascending) where the digit of `a` is below r. Defined
    /// only for parity coordinates; an all-information coordinate has no
    /// parity group to describe.
    pub fn t_set(&self, a: &Coord) -> Result<Vec<usize>> {
        let rank = self.coord_rank(a)?;
        if self.is_info_rank(rank) {
            return Err(Error::NotParityCoord(self.coord_token(a)));
        }
        Ok(a.digits()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d < self.r())
            .map(|(j, _)| j + 1)
            .collect())
    }

    /// The parity group `L(a)`: all information coordinates that agree
    /// with `a` on every axis in `t_set(a)`, in rank order.
    pub fn l_set(&self, a: &Coord) -> Result<Vec<Coord>> {
        let rank = self.coord_rank(a)?;
        if self.is_info_rank(rank) {
            return Err(Error::NotParityCoord(self.coord_token(a)));
        }
        let mut ranks = Vec::new();
        self.l_set_ranks_into(rank, &mut ranks);
        Ok(ranks
            .into_iter()
            .map(|rank| self.coord_at(rank).expect("rank in range"))
            .collect())
    }

    /// The line through `a` along a 1-based axis: the r+1 coordinates
    /// agreeing with `a` everywhere else, in rank order. Contains `a`.
    pub fn line_coords(&self, a: &Coord, axis: usize) -> Result<Vec<Coord>> {
        self.coord_rank(a)?;
        if axis == 0 || axis > self.m() as usize {
            return Err(Error::AxisOutOfRange { axis, m: self.m() });
        }
        Ok((0..=self.r()).map(|d| a.with_digit(axis, d)).collect())
    }

    /// Information coordinates in rank order.
    pub fn info_coords(&self) -> Vec<Coord> {
        self.coords().filter(|a| self.is_info_coord(a)).collect()
    }

    /// Parity coordinates in rank order.
    pub fn parity_coords(&self) -> Vec<Coord> {
        self.coords().filter(|a| !self.is_info_coord(a)).collect()
    }

    /// Builds the full parity check matrix. One row per parity coordinate.
    pub fn build_parity_check(&self) -> ParityCheckMatrix {
        let n = self.n();
        let mut rows = BitMatrix::zero(self.parity_count(), n);
        let mut row_coords = Vec::with_capacity(self.parity_count());
        let mut group = Vec::new();
        let mut row = 0;
        for rank in 0..n {
            if self.is_info_rank(rank) {
                continue;
            }
            group.clear();
            self.l_set_ranks_into(rank, &mut group);
            for &col in &group {
                rows.set(row, col, true);
            }
            rows.set(row, rank, true);
            row_coords.push(self.coord_at(rank).expect("rank in range"));
            row += 1;
        }
        ParityCheckMatrix {
            params: *self,
            rows,
            row_coords,
        }
    }

    /// Systematic encoding: the k information bits land on the information
    /// coordinates in rank order, and each parity coordinate gets the XOR
    /// of its group.
    pub fn encode(&self, info: &BitWord) -> Result<BitWord> {
        if info.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                actual: info.len(),
            });
        }
        let mut word = BitWord::zero(self.n());
        let mut next_info = 0;
        for rank in 0..self.n() {
            if self.is_info_rank(rank) {
                word.set(rank, info.get(next_info));
                next_info += 1;
            }
        }
        let mut group = Vec::new();
        for rank in 0..self.n() {
            if self.is_info_rank(rank) {
                continue;
            }
            group.clear();
            self.l_set_ranks_into(rank, &mut group);
            let parity = group.iter().fold(false, |acc, &i| acc ^ word.get(i));
            word.set(rank, parity);
        }
        Ok(word)
    }

    /// Reads the information bits back out of a full-length word.
    pub fn extract_info(&self, word: &BitWord) -> Result<BitWord> {
        if word.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: word.len(),
            });
        }
        let mut info = BitWord::zero(self.k());
        let mut next_info = 0;
        for rank in 0..self.n() {
            if self.is_info_rank(rank) {
                info.set(next_info, word.get(rank));
                next_info += 1;
            }
        }
        Ok(info)
    }

    /// True iff the word satisfies every parity check.
    pub fn is_codeword(&self, word: &BitWord) -> Result<bool> {
        if word.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: word.len(),
            });
        }
        let mut group = Vec::new();
        for rank in 0..self.n() {
            if self.is_info_rank(rank) {
                continue;
            }
            group.clear();
            self.l_set_ranks_into(rank, &mut group);
            let parity = group.iter().fold(false, |acc, &i| acc ^ word.get(i));
            if parity != word.get(rank) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The (n−k) × n parity check matrix, rows and columns both in coordinate
/// rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    params: CodeParams,
    rows: BitMatrix,
    row_coords: Vec<Coord>,
}

impl ParityCheckMatrix {
    pub fn params(&self) -> CodeParams {
        self.params
    }

    /// The underlying GF(2) matrix.
    pub fn matrix(&self) -> &BitMatrix {
        &self.rows
    }

    /// Parity coordinate owning each row, in rank order.
    pub fn row_coords(&self) -> &[Coord] {
        &self.row_coords
    }

    /// Rank over GF(2); always n−k because the parity columns form a
    /// permutation submatrix.
    pub fn rank(&self) -> usize {
        self.rows.rank()
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [r, m, n, k] = fields[..] else {
            return Err(Error::Parse(format!(
                "matrix header must be \"r m n k\", got {header:?}"
            )));
        };
        let parse_int = |s: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?} in matrix header")))
        };
        let (r, m) = (parse_int(r)?, parse_int(m)?);
        let (n, k) = (parse_int(n)? as usize, parse_int(k)? as usize);
        let params = CodeParams::new(
            r.try_into()
                .map_err(|_| Error::Parse("r out of range".into()))?,
            m.try_into()
                .map_err(|_| Error::Parse("m out of range".into()))?,
        )?;
        if params.n() != n || params.k() != k {
            return Err(Error::Parse(format!(
                "header claims n={n} k={k}, but r={r} m={m} gives n={} k={}",
                params.n(),
                params.k()
            )));
        }
        let mut built = params.build_parity_check();
        let mut rows = BitMatrix::zero(params.parity_count(), params.n());
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            if i >= params.parity_count() {
                return Err(Error::Parse(format!(
                    "expected {} matrix rows, found more",
                    params.parity_count()
                )));
            }
            let line = line.trim();
            if line.chars().count() != params.n() {
                return Err(Error::Parse(format!(
                    "matrix row {} has {} columns, expected {}",
                    i + 1,
                    line.chars().count(),
                    params.n()
                )));
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => rows.set(i, j, true),
                    _ => {
                        return Err(Error::Parse(format!(
                            "unexpected character {c:?} in matrix row {}",
                            i + 1
                        )))
                    }
                }
            }
            count += 1;
        }
        if count != params.parity_count() {
            return Err(Error::Parse(format!(
                "expected {} matrix rows, found {count}",
                params.parity_count()
            )));
        }
        built.rows = rows;
        Ok(built)
    }
}

impl fmt::Display for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} {} {}",
            self.params.r(),
            self.params.m(),
            self.params.n(),
            self.params.k()
        )?;
        for row in 0..self.rows.rows() {
            for col in 0..self.rows.cols() {
                f.write_str(if self.rows.get(row, col) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
