//! Exact integer and rational linear algebra.
//!
//! Determinants and inverses go through fraction-free (Bareiss) elimination
//! over [`BigInt`], so every intermediate value is itself a minor of the input
//! and no rational arithmetic happens until the final division by the
//! determinant.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bitcore::BinMatrix;
use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type ExactVector = Vec<BigRational>;

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `p/q` (or `p`) form produced by [`fmt_rational`].
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_bin(p: &BinMatrix) -> Self {
        IntMatrix::from_fn(p.nrows(), p.ncols(), |i, j| BigInt::from(p.get(i, j) as u8))
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from((i == j) as u8))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        })
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_determinant(self))
    }

    /// Returns `(adj, det)` with `self * adj == det * I`.
    pub fn adjugate(&self) -> Result<(IntMatrix, BigInt)> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_adjugate(self))
    }
}

fn bareiss_determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Fraction-free Gauss–Jordan on `[M | I]`. Every division is exact; at the
/// end the left half is `d * I` and the right half is `d * M^{-1}`, where `d`
/// is the determinant of the row-swapped matrix.
fn bareiss_adjugate(m: &IntMatrix) -> (IntMatrix, BigInt) {
    let n = m.rows;
    let w = 2 * n;
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..w)
                .map(|j| {
                    if j < n {
                        m.get(i, j).clone()
                    } else {
                        BigInt::from((j - n == i) as u8)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            // Singular: the adjugate still exists but we only need it for
            // nonsingular inputs; fall back to cofactors.
            return (cofactor_adjugate(m), BigInt::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = prev;
    // Right half is d * M^{-1} with d = det(row-swapped M) = ±det(M).
    let sign = if negate {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let adj = IntMatrix::from_fn(n, n, |i, j| &a[i][n + j] * &sign);
    (adj, d * sign)
}

fn cofactor_adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    IntMatrix::from_fn(n, n, |i, j| {
        // adj(i, j) = (-1)^{i+j} * minor(j, i)
        let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < j { r } else { r + 1 };
            let cc = if c < i { c } else { c + 1 };
            m.get(rr, cc).clone()
        });
        let d = bareiss_determinant(&minor);
        if (i + j) % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Exact determinant of an integer matrix.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    m.determinant()
}

/// Exact determinant of a square 0/1 matrix.
pub fn determinant_bin(p: &BinMatrix) -> Result<BigInt> {
    p.require_square()?;
    Ok(bareiss_determinant(&IntMatrix::from_bin(p)))
}

/// `Pᵀ P` for any (possibly rectangular) 0/1 matrix.
pub fn gram(p: &BinMatrix) -> IntMatrix {
    let cols = p.columns();
    IntMatrix::from_fn(p.ncols(), p.ncols(), |i, j| {
        BigInt::from(cols[i].dot(&cols[j]))
    })
}

/// Exact inverse of a nonsingular integer matrix.
pub fn inverse(m: &IntMatrix) -> Result<ExactMatrix> {
    let (adj, det) = m.adjugate()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(ExactMatrix::from_fn(m.rows, m.cols, |i, j| {
        BigRational::new(adj.get(i, j).clone(), det.clone())
    }))
}

/// `(Pᵀ P)^{-1}`. Works for rectangular `P` of full column rank.
pub fn gram_inverse(p: &BinMatrix) -> Result<ExactMatrix> {
    inverse(&gram(p))
}

/// `P^{-ᵀ}`, whose columns are inward normals to the facets opposite the
/// corresponding columns of `P`.
pub fn transposed_inverse(p: &BinMatrix) -> Result<ExactMatrix> {
    p.require_square()?;
    Ok(inverse(&IntMatrix::from_bin(p))?.transpose())
}

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::from_fn(rows, cols, |_, _| BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `(1/denominator) * numerators`.
    pub fn scaled(denominator: i64, numerators: &[&[i64]]) -> Self {
        let cols = numerators.first().map_or(0, |r| r.len());
        assert!(numerators.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix::from_fn(numerators.len(), cols, |i, j| {
            rat(numerators[i][j], denominator)
        })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        ExactMatrix::from_fn(m.rows, m.cols, |i, j| {
            BigRational::from_integer(m.get(i, j).clone())
        })
    }

    pub fn from_bin(p: &BinMatrix) -> Self {
        ExactMatrix::from_fn(p.nrows(), p.ncols(), |i, j| {
            BigRational::from_integer(BigInt::from(p.get(i, j) as u8))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> ExactVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> ExactVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .fold(BigRational::zero(), |a, b| a + b)
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> ExactVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|k| self.get(i, k) * &v[k])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn row_sums(&self) -> ExactVector {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().sum())
            .collect()
    }

    pub fn col_sums(&self) -> ExactVector {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Positions of the nonzero entries, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Entries as `p/q` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| fmt_rational(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.common_denominator();
        if !d.is_one() {
            writeln!(f, "(1/{d}) *")?;
        }
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    (self.get(i, j) * BigRational::from_integer(d.clone()))
                        .to_integer()
                        .to_string()
                })
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use proptest::prelude::*;

    /// Cofactor (Laplace) expansion along the first row. Independent of Bareiss.
    fn laplace(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * laplace(&minor)
            })
            .sum()
    }

    fn as_rows(p: &BinMatrix) -> Vec<Vec<i64>> {
        (0..p.nrows())
            .map(|i| (0..p.ncols()).map(|j| p.get(i, j) as i64).collect())
            .collect()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            determinant_bin(&BinMatrix::identity(4)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            determinant_bin(&golden::acute_7()).unwrap().abs(),
            BigInt::from(13)
        );
        // The printed 1/20 scale of the transposed inverse is after reduction;
        // the determinant itself is 80 in absolute value.
        assert_eq!(
            determinant_bin(&golden::nonacute_fi_9()).unwrap().abs(),
            BigInt::from(80)
        );
        assert!(determinant_bin(&BinMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_exhaustively_up_to_four() {
        for n in 1..=4usize {
            for code in 0u64..(1u64 << (n * n)) {
                let rows: Vec<u64> = (0..n).map(|i| code >> (i * n) & ((1 << n) - 1)).collect();
                let p = BinMatrix::from_row_bits(n, n, rows).unwrap();
                assert_eq!(
                    determinant_bin(&p).unwrap(),
                    BigInt::from(laplace(&as_rows(&p))),
                    "{p:?}"
                );
            }
        }
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram(&BinMatrix::identity(3)), IntMatrix::identity(3));
        let col = BinMatrix::all_ones(2, 1);
        assert_eq!(gram(&col), IntMatrix::from_i64(&[&[2]]));
        let g = gram(&golden::acute_7());
        for i in 0..7 {
            for j in 0..7 {
                let floor = if i == j { 2 } else { 1 };
                assert!(*g.get(i, j) >= BigInt::from(floor));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            gram_inverse(&BinMatrix::identity(4)).unwrap(),
            ExactMatrix::identity(4)
        );
        assert_eq!(
            transposed_inverse(&BinMatrix::identity(4)).unwrap(),
            ExactMatrix::identity(4)
        );
        assert_eq!(
            transposed_inverse(&golden::acute_7()).unwrap(),
            golden::acute_7_transposed_inverse()
        );
        assert_eq!(
            transposed_inverse(&golden::nonobtuse_partly_7()).unwrap(),
            golden::nonobtuse_partly_7_transposed_inverse()
        );
        let q = golden::nonobtuse_partly_7_transposed_inverse();
        assert_eq!(
            gram_inverse(&golden::nonobtuse_partly_7()).unwrap(),
            q.transpose().mul(&q)
        );
        assert_eq!(
            transposed_inverse(&BinMatrix::all_ones(2, 2)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn gram_inverse_row_sums_for_nonacute_nine() {
        // (PᵀP)^{-1} e = P^{-1} q with q the printed normal; multiply the
        // printed matrices directly.
        let q_t = golden::nonacute_fi_9_transposed_inverse();
        let normal = golden::nonacute_fi_9_origin_normal();
        let expected = q_t.transpose().mul_vec(&normal);
        let b = gram_inverse(&golden::nonacute_fi_9()).unwrap();
        assert_eq!(b.row_sums(), expected);
        let mut frozen = vec![rat(1, 4), rat(1, 4)];
        frozen.resize(9, BigRational::zero());
        assert_eq!(expected, frozen);
    }

    #[test]
    fn rational_formatting_round_trips() {
        for (p, q) in [(3, 4), (-7, 13), (10, 5), (0, 9)] {
            let r = rat(p, q);
            assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
        }
        assert_eq!(fmt_rational(&rat(-14, 13)), "-14/13");
        assert_eq!(parse_rational("1/0"), None);
    }

    fn arb_nonsingular(max: usize) -> impl Strategy<Value = BinMatrix> {
        (1..=max)
            .prop_flat_map(|n| {
                prop::collection::vec(0..(1u64 << n), n)
                    .prop_map(move |rows| BinMatrix::from_row_bits(n, n, rows).unwrap())
            })
            .prop_filter("nonsingular", |p| !determinant_bin(p).unwrap().is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn transposed_inverse_is_exact(p in arb_nonsingular(8)) {
            let q = transposed_inverse(&p).unwrap();
            prop_assert!(q.transpose().mul(&ExactMatrix::from_bin(&p)).is_identity());
            prop_assert_eq!(gram_inverse(&p).unwrap(), q.transpose().mul(&q));
            let g = ExactMatrix::from_int(&gram(&p));
            prop_assert!(gram_inverse(&p).unwrap().mul(&g).is_identity());
        }

        #[test]
        fn bareiss_matches_cofactor_at_six(rows in prop::collection::vec(0u64..64, 6)) {
            let p = BinMatrix::from_row_bits(6, 6, rows).unwrap();
            prop_assert_eq!(determinant_bin(&p).unwrap(), BigInt::from(laplace(&as_rows(&p))));
        }

        #[test]
        fn adjugate_identity_on_random_integers(
            entries in prop::collection::vec(-5i64..=5, 16)
        ) {
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let m = IntMatrix::from_i64(&rows);
            let (adj, det) = m.adjugate().unwrap();
            let prod = m.mul(&adj);
            let expected = IntMatrix::from_fn(4, 4, |i, j| if i == j { det.clone() } else { BigInt::zero() });
            prop_assert_eq!(prod, expected);
            let dense: Vec<Vec<i64>> = entries.chunks(4).map(|r| r.to_vec()).collect();
            prop_assert_eq!(det, BigInt::from(laplace(&dense)));
        }
    }
}
