use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};
use super::ExactError;

/// Dense row-major matrix. With a [`Field`] entry type all elimination is
/// exact; the same container carries `f64` entries for float paths.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix over an exact coefficient field.
pub type ExactMatrix<F> = Matrix<F>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if *a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if *b == T::zero() {
                        continue;
                    }
                    let cur = out[(i, j)].clone();
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Stack `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Self {
        assert_eq!(self.cols, below.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, right: &Self) -> Self {
        assert_eq!(self.rows, right.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                right[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let c0 = cols.start;
        let r0 = rows.start;
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Write `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let cur = self[(r0 + i, c0 + j)].clone();
                self[(r0 + i, c0 + j)] = cur + block[(i, j)].clone();
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.matmul(self);
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| &self.data[i * self.cols + j]).collect();
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivot_columns: Vec<usize>,
    pub swaps: usize,
}

impl<F: Field> Matrix<F> {
    /// Bareiss elimination. Each update is
    /// `m[i][j] = (p * m[i][j] - m[i][c] * m[r][j]) / prev`, which keeps
    /// integer-valued input integral when no column is skipped and is always
    /// a valid row operation over a field.
    pub fn bareiss(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut prev = F::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut swaps = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = m[(r, c)].clone();
            for i in (r + 1)..m.rows {
                let lead = m[(i, c)].clone();
                for j in (c + 1)..m.cols {
                    let num = pivot.clone() * m[(i, j)].clone() - lead.clone() * m[(r, j)].clone();
                    m[(i, j)] = num
                        .try_div(&prev)
                        .expect("previous Bareiss pivot is nonzero");
                }
                m[(i, c)] = F::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: m,
            pivot_columns: pivots,
            swaps,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the coefficient field.
    pub fn rank(&self) -> usize {
        self.bareiss().pivot_columns.len()
    }

    pub fn determinant(&self) -> Result<F, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        if self.rows == 0 {
            return Ok(F::one());
        }
        let e = self.bareiss();
        if e.pivot_columns.len() < self.rows {
            return Ok(F::zero());
        }
        // with full rank the last Bareiss pivot is the determinant
        let d = e.reduced[(self.rows - 1, self.cols - 1)].clone();
        Ok(if e.swaps % 2 == 1 { -d } else { d })
    }

    /// Reduced row echelon form (pivots normalized to one).
    pub fn rref(&self) -> Echelon<F> {
        let Echelon {
            reduced: mut m,
            pivot_columns,
            swaps,
        } = self.bareiss();
        for (r, &c) in pivot_columns.iter().enumerate() {
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m[(r, j)].clone();
                m[(r, j)] = v * inv.clone();
            }
        }
        for (r, &c) in pivot_columns.iter().enumerate().rev() {
            for i in 0..r {
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        Echelon {
            reduced: m,
            pivot_columns,
            swaps,
        }
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        kernel_from_rref(&e.reduced, &e.pivot_columns)
    }

    /// Indices of a maximal linearly independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.bareiss().pivot_columns
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let e = aug.rref();
        if e.pivot_columns.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in e.pivot_columns.iter().enumerate() {
            x[c] = e.reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let e = self.hstack(&Matrix::identity(n)).rref();
        if e.pivot_columns.len() < n || e.pivot_columns[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        Ok(e.reduced.submatrix(0..n, n..2 * n))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }
}

pub(crate) fn kernel_from_rref<F: Field>(m: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F>> {
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &c) in pivots.iter().enumerate() {
            let e = &m[(r, free)];
            if !e.is_zero() {
                v[c] = -e.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a set of vectors of equal length.
pub fn span_rank<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(len, vectors).rank()
}
