//! Dense GF(2) matrices packed into 64-bit words.
//!
//! The codes built here stay small (length capped near a million symbols,
//! and the verification workloads use far less), so a dense row-major
//! bitset with plain Gaussian elimination covers every need: rank checks,
//! row-space comparisons, and feasibility of linear repair equations.

/// A rows × cols matrix over GF(2), one bit per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        let word = &mut self.words[row * self.stride + col / 64];
        if bit {
            *word |= 1 << (col % 64);
        } else {
            *word &= !(1 << (col % 64));
        }
    }

    /// Adds (XORs) row `src` into row `dst`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert!(src != dst);
        let (a, b) = (src * self.stride, dst * self.stride);
        for w in 0..self.stride {
            let bits = self.words[a + w];
            self.words[b + w] ^= bits;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Stacks `other` below `self`. Column counts must match.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut out = Self::zero(self.rows + other.rows, self.cols);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.words[self.words.len()..].copy_from_slice(&other.words);
        out
    }

    /// Reduces in place to row echelon form, returning the rank.
    pub fn echelonize(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) =
                (pivot_row..self.rows).find(|&row| self.get(row, col))
            else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            for row in 0..self.rows {
                if row != pivot_row && self.get(row, col) {
                    self.xor_row_into(pivot_row, row);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().echelonize()
    }

    /// True when the system `self · x = rhs` has a solution over GF(2),
    /// decided by comparing the rank of the matrix with the rank of the
    /// augmented matrix.
    pub fn is_consistent(&self, rhs: &[bool]) -> bool {
        assert_eq!(rhs.len(), self.rows, "right-hand side length differs");
        let mut augmented = Self::zero(self.rows, self.cols + 1);
        for (row, &bit) in rhs.iter().enumerate() {
            let base = row * self.stride;
            let out_base = row * augmented.stride;
            augmented.words[out_base..out_base + self.stride]
                .copy_from_slice(&self.words[base..base + self.stride]);
            augmented.set(row, self.cols, bit);
        }
        augmented.echelonize() == self.rank()
    }
}
