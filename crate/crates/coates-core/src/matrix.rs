use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { rows, cols, entries: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            let entries = rows.iter().map(Vec::len).sum();
            return Err(Error::DimensionMismatch { rows: r, cols: c, entries });
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for integer matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Zero-based entry access. Panics if out of bounds.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exact test that every row sums to zero.
    pub fn is_zero_row_sum(&self) -> Result<bool> {
        let n = self.require_square()?;
        Ok((0..n).all(|i| self.row(i).iter().sum::<Rational>().is_zero()))
    }

    /// Exact test that the matrix equals its transpose.
    pub fn is_symmetric(&self) -> Result<bool> {
        let n = self.require_square()?;
        Ok((0..n).all(|i| (i + 1..n).all(|j| self.entry(i, j) == self.entry(j, i))))
    }

    /// Exact test that every row sum and every column sum is zero.
    pub fn is_equicofactor(&self) -> Result<bool> {
        let n = self.require_square()?;
        let cols_ok = (0..n).all(|j| (0..n).map(|i| self.entry(i, j)).sum::<Rational>().is_zero());
        Ok(self.is_zero_row_sum()? && cols_ok)
    }
}

/// Strictly increasing set of 1-based row/column indices within `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Sorts the input; rejects duplicates and indices outside `1..=n`.
    /// Duplicates are an error rather than silently merged, because the
    /// cardinality of the set carries the sign `(-1)^{|S|}`.
    pub fn new(indices: impl Into<Vec<usize>>, n: usize) -> Result<Self> {
        let mut indices = indices.into();
        indices.sort_unstable();
        for window in indices.windows(2) {
            if window[0] == window[1] {
                return Err(Error::DuplicateIndex(window[0]));
            }
        }
        for &i in &indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        Ok(Self { indices })
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self { indices: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// Extracts the `|S| x |S|` submatrix of entries `(M[i][k])` for `i, k` in `S`.
pub fn principal_submatrix(m: &Matrix, s: &IndexSet) -> Result<Matrix> {
    let n = m.require_square()?;
    if let Some(&max) = s.indices().last() {
        if max > n {
            return Err(Error::IndexOutOfRange { index: max, n });
        }
    }
    let k = s.len();
    let mut entries = Vec::with_capacity(k * k);
    for i in s.iter() {
        for j in s.iter() {
            entries.push(m.entry(i - 1, j - 1).clone());
        }
    }
    Matrix::new(k, k, entries)
}

/// Extends a square matrix to an `(n+1) x (n+1)` equicofactor matrix by
/// bordering it with negated row sums, negated column sums, and the total sum.
pub fn equicofactor_extend(m: &Matrix) -> Result<Matrix> {
    let n = m.require_square()?;
    let mut ext = Matrix::zeros(n + 1, n + 1);
    let mut total = Rational::zero();
    let mut col_sums = alloc::vec![Rational::zero(); n];
    for i in 0..n {
        let mut row_sum = Rational::zero();
        for j in 0..n {
            let v = m.entry(i, j);
            row_sum += v;
            col_sums[j] += v;
            ext.set(i, j, v.clone());
        }
        total += &row_sum;
        ext.set(i, n, -row_sum);
    }
    for (j, sum) in col_sums.into_iter().enumerate() {
        ext.set(n, j, -sum);
    }
    ext.set(n, n, total);
    Ok(ext)
}
