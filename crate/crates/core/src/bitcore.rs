//! Bit-packed 0/1 vectors and matrices.
//!
//! A [`BinVector`] of length `n` is a vertex of the unit `n`-cube. A
//! [`BinMatrix`] stores each row in one machine word (bit `j` of a row word is
//! column `j`), so the width of a matrix is capped at [`MAX_DIM`].
//!
//! All indices are zero-based. The three moves that relate matrix
//! representations of the same simplex are [`BinMatrix::permute`] (row and
//! column relabelling) and [`BinMatrix::xor_reflect`] (moving a vertex to the
//! origin).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of columns (and vector length) supported.
pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A 0/1 vector of length at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BinVector {
    bits: u64,
    len: usize,
}

impl BinVector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_DIM, "vector length {len} exceeds {MAX_DIM}");
        BinVector { bits: 0, len }
    }

    /// The all-ones vector `e`.
    pub fn ones_vector(len: usize) -> Self {
        assert!(len <= MAX_DIM, "vector length {len} exceeds {MAX_DIM}");
        BinVector {
            bits: mask(len),
            len,
        }
    }

    /// The standard basis vector with a one at position `i`.
    pub fn unit(i: usize, len: usize) -> Self {
        assert!(i < len && len <= MAX_DIM);
        BinVector { bits: 1 << i, len }
    }

    /// Builds a vector from a bit word where bit `i` is coordinate `i`.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_DIM {
            return Err(Error::TooWide(len));
        }
        if bits & !mask(len) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 63 - bits.leading_zeros() as usize,
                len,
            });
        }
        Ok(BinVector { bits, len })
    }

    pub(crate) fn from_bits_unchecked(bits: u64, len: usize) -> Self {
        debug_assert!(bits & !mask(len) == 0);
        BinVector { bits, len }
    }

    /// Builds a vector from entries that must each be 0 or 1.
    pub fn from_entries(entries: &[u8]) -> Result<Self> {
        if entries.len() > MAX_DIM {
            return Err(Error::TooWide(entries.len()));
        }
        let mut bits = 0u64;
        for (i, &e) in entries.iter().enumerate() {
            match e {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("entry {e} at position {i} is not 0 or 1"),
                    })
                }
            }
        }
        Ok(BinVector {
            bits,
            len: entries.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.bits >> i & 1 == 1
    }

    pub fn with(&self, i: usize, value: bool) -> Self {
        assert!(i < self.len);
        let bits = if value {
            self.bits | 1 << i
        } else {
            self.bits & !(1 << i)
        };
        BinVector {
            bits,
            len: self.len,
        }
    }

    /// Number of entries equal to one.
    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of entries equal to zero.
    pub fn zeros_count(&self) -> usize {
        self.len - self.ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Entrywise complement `e - v`.
    pub fn antipode(&self) -> Self {
        BinVector {
            bits: !self.bits & mask(self.len),
            len: self.len,
        }
    }

    /// Entrywise sum modulo two.
    pub fn xor(&self, other: &BinVector) -> Self {
        assert_eq!(self.len, other.len);
        BinVector {
            bits: self.bits ^ other.bits,
            len: self.len,
        }
    }

    /// Integer inner product.
    pub fn dot(&self, other: &BinVector) -> usize {
        assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() as usize
    }

    /// Positions of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.bits >> i & 1 == 1).collect()
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len).map(|i| (self.bits >> i & 1) as u8).collect()
    }
}

impl fmt::Display for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_bits(s.trim(), 1)?;
        BinVector::from_entries(&entries)
    }
}

fn parse_bits(line: &str, line_no: usize) -> Result<Vec<u8>> {
    line.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse {
                line: line_no,
                msg: format!("unexpected character {other:?} at column {}", i + 1),
            }),
        })
        .collect()
}

/// A bijection of `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation { len: n });
            }
            seen[i] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The permutation exchanging `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, j);
        Permutation(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// `self.compose(other)(i) == self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// A dense 0/1 matrix with at most 64 columns, one word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= MAX_DIM, "width {ncols} exceeds {MAX_DIM}");
        BinMatrix {
            nrows,
            ncols,
            rows: vec![0; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        BinMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn all_ones(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= MAX_DIM);
        BinMatrix {
            nrows,
            ncols,
            rows: vec![mask(ncols); nrows],
        }
    }

    /// Builds a matrix from row words (bit `j` of word `i` is entry `(i, j)`).
    pub fn from_row_bits(nrows: usize, ncols: usize, rows: Vec<u64>) -> Result<Self> {
        if ncols > MAX_DIM {
            return Err(Error::TooWide(ncols));
        }
        if rows.len() != nrows {
            return Err(Error::DimensionMismatch {
                expected: nrows,
                found: rows.len(),
            });
        }
        if let Some(&bad) = rows.iter().find(|&&r| r & !mask(ncols) != 0) {
            return Err(Error::IndexOutOfRange {
                index: 63 - bad.leading_zeros() as usize,
                len: ncols,
            });
        }
        Ok(BinMatrix { nrows, ncols, rows })
    }

    /// Builds a matrix from a row-major list of 0/1 entries.
    pub fn from_entries(rows: &[&[u8]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let words = rows
            .iter()
            .map(|r| {
                if r.len() != ncols {
                    return Err(Error::DimensionMismatch {
                        expected: ncols,
                        found: r.len(),
                    });
                }
                BinVector::from_entries(r).map(|v| v.bits)
            })
            .collect::<Result<Vec<_>>>()?;
        BinMatrix::from_row_bits(rows.len(), ncols, words)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[BinVector]) -> Result<Self> {
        if columns.len() > MAX_DIM {
            return Err(Error::TooWide(columns.len()));
        }
        let mut rows = vec![0u64; nrows];
        for (j, c) in columns.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch {
                    expected: nrows,
                    found: c.len(),
                });
            }
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= (c.bits >> i & 1) << j;
            }
        }
        Ok(BinMatrix {
            nrows,
            ncols: columns.len(),
            rows,
        })
    }

    /// Builds a matrix from column words (bit `i` of word `j` is entry `(i, j)`).
    pub fn from_column_bits(nrows: usize, columns: &[u64]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|&c| BinVector::from_bits(c, nrows))
            .collect::<Result<Vec<_>>>()?;
        BinMatrix::from_columns(nrows, &cols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows)
        } else {
            Err(Error::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.nrows && j < self.ncols,
            "entry ({i}, {j}) out of range"
        );
        self.rows[i] >> j & 1 == 1
    }

    pub fn with_entry(&self, i: usize, j: usize, value: bool) -> Self {
        assert!(i < self.nrows && j < self.ncols);
        let mut out = self.clone();
        if value {
            out.rows[i] |= 1 << j;
        } else {
            out.rows[i] &= !(1 << j);
        }
        out
    }

    pub fn row_bits(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BinVector {
        BinVector::from_bits_unchecked(self.rows[i], self.ncols)
    }

    /// Row `i` as a word whose most significant used bit is column 0, so that
    /// integer order equals the lexicographic order of the row string.
    pub fn row_key(&self, i: usize) -> u64 {
        if self.ncols == 0 {
            0
        } else {
            self.rows[i].reverse_bits() >> (64 - self.ncols)
        }
    }

    pub fn column(&self, j: usize) -> BinVector {
        assert!(j < self.ncols, "column {j} out of range");
        let bits = self
            .rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (r >> j & 1) << i);
        BinVector::from_bits_unchecked(bits, self.nrows)
    }

    pub fn columns(&self) -> Vec<BinVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// Columns as words. Requires `nrows <= 64`.
    pub fn column_bits(&self) -> Vec<u64> {
        assert!(self.nrows <= MAX_DIM);
        self.columns().into_iter().map(|c| c.bits).collect()
    }

    pub fn transpose(&self) -> Self {
        assert!(self.nrows <= MAX_DIM);
        BinMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: self.column_bits(),
        }
    }

    /// Entrywise complement.
    pub fn antipode(&self) -> Self {
        let m = mask(self.ncols);
        BinMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| !r & m).collect(),
        }
    }

    /// Number of entries equal to one.
    pub fn ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Number of entries equal to zero.
    pub fn zeros_count(&self) -> usize {
        self.nrows * self.ncols - self.ones()
    }

    /// Positions `(i, j)` of the nonzero entries, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.ones());
        for (i, &r) in self.rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.push((i, j));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Keeps column `c` and replaces every other column `d` by `c + d mod 2`.
    /// Geometrically this moves the vertex `c` to the origin.
    pub fn xor_reflect(&self, c: usize) -> Result<Self> {
        if c >= self.ncols {
            return Err(Error::IndexOutOfRange {
                index: c,
                len: self.ncols,
            });
        }
        let keep = 1u64 << c;
        let others = mask(self.ncols) & !keep;
        let rows = self
            .rows
            .iter()
            .map(|&r| if r & keep != 0 { r ^ others } else { r })
            .collect();
        Ok(BinMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// `result(i, j) = self(row_perm(i), col_perm(j))`.
    pub fn permute(&self, row_perm: &Permutation, col_perm: &Permutation) -> Result<Self> {
        if row_perm.len() != self.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: row_perm.len(),
            });
        }
        if col_perm.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: col_perm.len(),
            });
        }
        let rows = (0..self.nrows)
            .map(|i| {
                let src = self.rows[row_perm.apply(i)];
                (0..self.ncols).fold(0u64, |acc, j| acc | (src >> col_perm.apply(j) & 1) << j)
            })
            .collect();
        Ok(BinMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// The matrix with column `j` replaced by `v`.
    pub fn replace_column(&self, j: usize, v: &BinVector) -> Result<Self> {
        if j >= self.ncols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.ncols,
            });
        }
        if v.len() != self.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: v.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (r & !(1 << j)) | (v.bits >> i & 1) << j)
            .collect();
        Ok(BinMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let words = rows
            .iter()
            .map(|&i| {
                let src = self.rows[i];
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &j)| acc | (src >> j & 1) << k)
            })
            .collect();
        BinMatrix {
            nrows: rows.len(),
            ncols: cols.len(),
            rows: words,
        }
    }

    /// Parses the text format: one row per line of `0`/`1` characters. Leading
    /// blank lines are skipped, the first blank line after a row ends the
    /// matrix, and surrounding whitespace on each line is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                if rows.is_empty() {
                    continue;
                }
                break;
            }
            let entries = parse_bits(line, idx + 1)?;
            if let Some(first) = rows.first() {
                if first.len() != entries.len() {
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: format!(
                            "row has {} entries, expected {}",
                            entries.len(),
                            first.len()
                        ),
                    });
                }
            }
            rows.push(entries);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no matrix rows found".into(),
            });
        }
        let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        BinMatrix::from_entries(&refs)
    }

    /// Row strings in the text format, one per row.
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.nrows).map(|i| self.row(i).to_string()).collect()
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMatrix({}x{}; ", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str(")")
    }
}

impl FromStr for BinMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinMatrix::parse(s)
    }
}

/// Row-major lexicographic order on the entry strings, after ordering by shape.
impl Ord for BinMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.nrows, self.ncols)
            .cmp(&(other.nrows, other.ncols))
            .then_with(|| {
                (0..self.nrows)
                    .map(|i| self.row_key(i).cmp(&other.row_key(i)))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    }
}

impl PartialOrd for BinMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
