use crate::exactnum::{Field, Matrix, Rational, Scalar};

/// Linear subspace of `Q^n`, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let rows: Vec<Vec<Rational>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        for v in &rows {
            assert_eq!(v.len(), ambient_dim, "vector length differs from ambient dimension");
        }
        let e = Matrix::from_rows(rows).rref();
        let basis = (0..e.pivot_columns.len())
            .map(|r| e.reduced.row(r).to_vec())
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: e.pivot_columns,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = super::algebra::combine(&self.basis, &coords, self.ambient_dim);
        (back.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }

    /// `{x : B(v, x) = 0 for all v in self}` for the bilinear form `b`.
    pub fn orthogonal_complement(&self, b: &Matrix<Rational>) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        let rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|v| b.transpose().mul_vec(v))
            .collect();
        let kernel = Matrix::from_rows(rows).kernel();
        Subspace::span(self.ambient_dim, &kernel)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(n, &cols);
        let vecs: Vec<Vec<Rational>> = m
            .kernel()
            .into_iter()
            .map(|k| super::algebra::combine(&self.basis, &k[..self.dim()], n))
            .collect();
        Subspace::span(n, &vecs)
    }

    /// Basis vectors as the columns of an `n x dim` matrix.
    pub fn as_columns(&self) -> Matrix<Rational> {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    /// Standard unit vectors completing the echelon basis to `Q^n`.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}
