//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are packed 64 bits per word. The solver sizes here
//! top out around 11,025 × 105 (the twist system), so a dense representation
//! with plain Gaussian elimination is entirely adequate.
//!
//! Elimination uses a fixed pivot order (leftmost pivot column, topmost
//! remaining row) so that ranks, kernel bases and particular solutions are
//! reproducible byte for byte. All operations leave their inputs unmodified.

use std::fmt;

/// Errors from shape mismatches in GF(2) operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gf2Error {
    /// Operand dimensions are incompatible.
    Dimension {
        expected: usize,
        got: usize,
        context: &'static str,
    },
}

impl fmt::Display for Gf2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf2Error::Dimension {
                expected,
                got,
                context,
            } => write!(f, "{context}: expected length {expected}, got {got}"),
        }
    }
}

impl std::error::Error for Gf2Error {}

/// A dense bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// The zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// A vector with exactly one bit set.
    #[must_use]
    pub fn singleton(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    /// Builds a vector from an iterator of bit indices to set.
    #[must_use]
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Returns bit `i`.
    ///
    /// # Panics
    /// Panics if `i >= self.len()`.
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Sets bit `i` to `value`.
    ///
    /// # Panics
    /// Panics if `i >= self.len()`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    /// Flips bit `i`.
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// GF(2) addition in place.
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// GF(2) sum of two vectors.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Number of set bits.
    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the intersection with `other`, i.e. the GF(2) dot product.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * 64;
            let len = self.len;
            OnesIter { word: w, base }.take_while(move |&i| i < len)
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({}; ", self.len)?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

struct OnesIter {
    word: u64,
    base: usize,
}

impl Iterator for OnesIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + bit)
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    /// The zero matrix of the given shape.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    /// Builds a matrix entrywise from a predicate.
    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stacks row vectors into a matrix.
    ///
    /// # Panics
    /// Panics if the rows have inconsistent lengths.
    #[must_use]
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "from_rows: row {r} has wrong length");
            m.row_words_mut(r).copy_from_slice(&row.words);
        }
        m
    }

    #[must_use]
    pub const fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Returns entry `(r, c)`.
    ///
    /// # Panics
    /// Panics if out of range.
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        (self.row_words(r)[c / 64] >> (c % 64)) & 1 == 1
    }

    /// Sets entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let wpr = self.words_per_row;
        let word = &mut self.bits[r * wpr + c / 64];
        if value {
            *word |= 1u64 << (c % 64);
        } else {
            *word &= !(1u64 << (c % 64));
        }
    }

    /// Copies row `r` out as a vector.
    #[must_use]
    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            words: self.row_words(r).to_vec(),
            len: self.cols,
        }
    }

    /// XORs matrices entrywise.
    ///
    /// # Panics
    /// Panics on shape mismatch.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "xor: row mismatch");
        assert_eq!(self.cols, other.cols, "xor: column mismatch");
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        out
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::Dimension {
                expected: self.cols,
                got: x.len(),
                context: "mul_vec",
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(r).iter().zip(&x.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Rank over GF(2).
    #[must_use]
    pub fn rank(&self) -> usize {
        self.clone().eliminate().pivot_cols.len()
    }

    /// Rank together with a basis of the right kernel.
    ///
    /// The kernel basis is deterministic: one vector per free column, in
    /// increasing column order, with the free coordinate set to 1.
    #[must_use]
    pub fn rank_and_kernel(&self) -> (usize, Vec<BitVec>) {
        let e = self.clone().eliminate();
        let rank = e.pivot_cols.len();
        (rank, e.kernel_basis())
    }

    /// Solves `self * x = rhs`.
    ///
    /// Returns `Ok(None)` when the system is inconsistent, otherwise one
    /// particular solution (free coordinates zero) together with a kernel
    /// basis describing the full solution coset.
    pub fn solve_affine(&self, rhs: &BitVec) -> Result<Option<AffineSolution>, Gf2Error> {
        if rhs.len() != self.rows {
            return Err(Gf2Error::Dimension {
                expected: self.rows,
                got: rhs.len(),
                context: "solve_affine",
            });
        }
        let mut work = self.clone();
        let mut b = rhs.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..work.cols {
            let Some(src) = (pivot_row..work.rows).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(pivot_row, src);
            let (pb, sb) = (b.get(pivot_row), b.get(src));
            b.set(pivot_row, sb);
            b.set(src, pb);
            for r in 0..work.rows {
                if r != pivot_row && work.get(r, col) {
                    work.xor_rows(r, pivot_row);
                    if b.get(pivot_row) {
                        b.flip(r);
                    }
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
            if pivot_row == work.rows {
                break;
            }
        }
        // A zero row with rhs 1 means the system is inconsistent.
        for r in pivot_row..work.rows {
            if b.get(r) {
                return Ok(None);
            }
        }
        let mut particular = BitVec::zeros(work.cols);
        for (r, &col) in pivot_cols.iter().enumerate() {
            if b.get(r) {
                particular.set(col, true);
            }
        }
        let kernel = Eliminated {
            reduced: work,
            pivot_cols,
        }
        .kernel_basis();
        Ok(Some(AffineSolution { particular, kernel }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.bits.swap(a * wpr + w, b * wpr + w);
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let wpr = self.words_per_row;
        for w in 0..wpr {
            let s = self.bits[src * wpr + w];
            self.bits[dst * wpr + w] ^= s;
        }
    }

    /// Reduced row echelon form with the fixed pivot order.
    fn eliminate(mut self) -> Eliminated {
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            for r in 0..self.rows {
                if r != pivot_row && self.get(r, col) {
                    self.xor_rows(r, pivot_row);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        Eliminated {
            reduced: self,
            pivot_cols,
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Particular solution plus kernel basis: the full coset of solutions.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

struct Eliminated {
    reduced: BitMatrix,
    pivot_cols: Vec<usize>,
}

impl Eliminated {
    /// One kernel vector per free column: the free coordinate is 1 and the
    /// pivot coordinates are read off the reduced rows.
    fn kernel_basis(&self) -> Vec<BitVec> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(cols - self.pivot_cols.len());
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(cols);
            v.set(free, true);
            for (r, &pc) in self.pivot_cols.iter().enumerate() {
                if self.reduced.get(r, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}
