use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse matrix over `ℤ` with arbitrary-precision entries. Zero entries are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub(crate) fn from_dense_big(rows: usize, cols: usize, dense: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// `rows × cols` matrix with `diag` down the main diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (r, c, v) in other.entries() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_default() += a * b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntegerMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.values().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
