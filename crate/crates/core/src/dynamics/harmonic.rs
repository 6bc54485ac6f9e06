//! Harmonic polynomials as representations of `O(n)`.
//!
//! Degree-`d` homogeneous polynomials are stored as coefficient vectors on
//! monomials in a fixed order. `g` acts by `(pi(g) p)(x) = p(g^{-1} x)`.
//! The Fischer inner product `<x^a, x^b> = a! [a = b]` is `O(n)`-invariant,
//! so after scaling coordinates by `sqrt(a!)` and orthonormalizing a basis
//! of the harmonic subspace, `pi(g)` becomes an orthogonal matrix.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::exactnum::{Matrix, Rational, Scalar};
use crate::liealg::binomial;

use super::DynError;

pub const DEFAULT_MONOMIAL_BUDGET: usize = 2000;

/// Monomials of each degree `0..=max_degree` and the split
/// `x^a = x_k * x^{a - e_k}` with `k` the first variable present.
#[derive(Clone, Debug)]
pub struct MonomialTables {
    pub n: usize,
    pub monomials: Vec<Vec<Vec<u8>>>,
    /// For each degree `k >= 1` and monomial: `(k_var, index of a - e_k in degree k-1)`.
    split: Vec<Vec<(usize, usize)>>,
    /// For each degree `k < max_degree`: index in degree `k+1` of `b + e_j`,
    /// stored at `b * n + j`.
    raise: Vec<Vec<usize>>,
}

/// Exponent vectors of total degree `d`, lexicographically descending.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n - 1 {
            prefix.push(left as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u8);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

impl MonomialTables {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let monos: Vec<Vec<Vec<u8>>> = (0..=max_degree).map(|d| monomials(n, d)).collect();
        let index: Vec<HashMap<&[u8], usize>> = monos
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect())
            .collect();
        let mut split = vec![Vec::new()];
        for k in 1..=max_degree {
            split.push(
                monos[k]
                    .iter()
                    .map(|a| {
                        let v = a.iter().position(|&e| e > 0).expect("positive degree");
                        let mut b = a.clone();
                        b[v] -= 1;
                        (v, index[k - 1][b.as_slice()])
                    })
                    .collect(),
            );
        }
        let mut raise = Vec::new();
        for k in 0..max_degree {
            let mut t = vec![0; monos[k].len() * n];
            for (bi, b) in monos[k].iter().enumerate() {
                for j in 0..n {
                    let mut c = b.clone();
                    c[j] += 1;
                    t[bi * n + j] = index[k + 1][c.as_slice()];
                }
            }
            raise.push(t);
        }
        MonomialTables {
            n,
            monomials: monos,
            split,
            raise,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.monomials.len() - 1
    }

    /// Matrices of `p -> p(L x)` on each degree `0..=max_degree`.
    pub fn substitution_chain<T: Scalar>(&self, l: &Matrix<T>) -> Vec<Matrix<T>> {
        let n = self.n;
        let mut chain = vec![Matrix::<T>::identity(1)];
        for k in 1..=self.max_degree() {
            let prev = &chain[k - 1];
            let rows = self.monomials[k].len();
            let prev_rows = self.monomials[k - 1].len();
            let mut s = Matrix::<T>::zeros(rows, rows);
            for (col, &(v, from)) in self.split[k].iter().enumerate() {
                // (L x)^a = (L x)_v * (L x)^{a - e_v}
                for b in 0..prev_rows {
                    let c: &T = &prev[(b, from)];
                    if *c == T::zero() {
                        continue;
                    }
                    for j in 0..n {
                        let lv = &l[(v, j)];
                        if *lv == T::zero() {
                            continue;
                        }
                        let r = self.raise[k - 1][b * n + j];
                        let add = c.clone() * lv.clone();
                        s[(r, col)] = s[(r, col)].clone() + add;
                    }
                }
            }
            chain.push(s);
        }
        chain
    }
}

/// `sqrt(a!)` for an exponent vector.
fn fischer_weight(a: &[u8]) -> f64 {
    a.iter()
        .map(|&e| (1..=u64::from(e)).product::<u64>() as f64)
        .product::<f64>()
        .sqrt()
}

#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub n: usize,
    pub degree: usize,
    tables: MonomialTables,
    /// Exact harmonic basis as coefficient vectors on the degree-`d` monomials.
    pub exact_basis: Vec<Vec<Rational>>,
    weights: Vec<f64>,
    /// Orthonormal basis of the weighted harmonic subspace (monomials x dim).
    orthonormal: DMatrix<f64>,
}

/// `C(n+d-1, d) - C(n+d-3, d-2)`.
pub fn harmonic_dimension(n: usize, d: usize) -> usize {
    let all = binomial(n + d - 1, d);
    if d < 2 {
        all
    } else {
        all - binomial(n + d - 3, d - 2)
    }
}

/// Laplacian from degree `d` to degree `d - 2`.
pub fn laplacian_matrix(n: usize, d: usize) -> Matrix<Rational> {
    let cols = monomials(n, d);
    if d < 2 {
        return Matrix::zeros(0, cols.len());
    }
    let rows = monomials(n, d - 2);
    let index: HashMap<&[u8], usize> = rows.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (c, a) in cols.iter().enumerate() {
        for i in 0..n {
            if a[i] >= 2 {
                let mut b = a.clone();
                b[i] -= 2;
                let coeff = i64::from(a[i]) * (i64::from(a[i]) - 1);
                m[(index[b.as_slice()], c)] = Rational::from_i64(coeff);
            }
        }
    }
    m
}

pub fn harmonic_space(n: usize, d: usize, budget: usize) -> Result<HarmonicSpace, DynError> {
    if n < 2 {
        return Err(DynError::DimensionMismatch { expected: 2, found: n });
    }
    let size = binomial(n + d - 1, d);
    if size > budget {
        return Err(DynError::HarmonicBudget { n, d, size, budget });
    }
    let lap = laplacian_matrix(n, d);
    let exact_basis = if lap.rows() == 0 {
        Matrix::<Rational>::identity(size).data().chunks(size).map(<[_]>::to_vec).collect()
    } else {
        lap.kernel()
    };
    for v in &exact_basis {
        if lap.mul_vec(v).iter().any(|x| *x != Rational::zero()) {
            return Err(DynError::Verification("kernel vector is not harmonic".into()));
        }
    }
    let expected = harmonic_dimension(n, d);
    if exact_basis.len() != expected {
        return Err(DynError::Verification(format!(
            "harmonic space has dimension {}, formula gives {expected}",
            exact_basis.len()
        )));
    }
    let tables = MonomialTables::new(n, d);
    let weights: Vec<f64> = tables.monomials[d].iter().map(|a| fischer_weight(a)).collect();
    let weighted = DMatrix::from_fn(size, exact_basis.len(), |r, c| {
        exact_basis[c][r].to_f64().expect("finite coefficient") * weights[r]
    });
    let orthonormal = weighted.qr().q();
    Ok(HarmonicSpace {
        n,
        degree: d,
        tables,
        exact_basis,
        weights,
        orthonormal,
    })
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.exact_basis.len()
    }

    pub fn tables(&self) -> &MonomialTables {
        &self.tables
    }

    /// Restrict a substitution matrix `p -> p(L x)` on degree-`d` monomials
    /// to the orthonormal harmonic basis.
    pub fn restrict(&self, s: &Matrix<f64>) -> DMatrix<f64> {
        let size = self.weights.len();
        let ws = DMatrix::from_fn(size, size, |r, c| s[(r, c)] * self.weights[r] / self.weights[c]);
        self.orthonormal.transpose() * ws * &self.orthonormal
    }

    /// `pi(g)` on the orthonormal harmonic basis; `g` must be orthogonal.
    pub fn representation(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        let chain = self.tables.substitution_chain(&dmatrix_to_matrix(&g.transpose()));
        self.restrict(&chain[self.degree])
    }

    /// Exact invariants of rational orthogonal generators, as an
    /// orthonormal set of columns in the harmonic basis coordinates.
    pub fn exact_invariants(&self, gens: &[Matrix<Rational>]) -> DMatrix<f64> {
        let size = self.weights.len();
        let c = Matrix::from_columns(size, &self.exact_basis);
        let mut stacked: Option<Matrix<Rational>> = None;
        for g in gens {
            // invariance under g^{-1} = g^T is the same condition
            let s = self.tables.substitution_chain(g).swap_remove(self.degree);
            let block = s.sub(&Matrix::identity(size)).matmul(&c);
            stacked = Some(match stacked {
                None => block,
                Some(m) => m.vstack(&block),
            });
        }
        let kernel = match stacked {
            None => Matrix::<Rational>::identity(self.dim()).data().chunks(self.dim().max(1)).map(<[_]>::to_vec).collect(),
            Some(m) => m.kernel(),
        };
        if kernel.is_empty() {
            return DMatrix::zeros(self.dim(), 0);
        }
        let vecs = DMatrix::from_fn(size, kernel.len(), |r, k| {
            let coeff: Rational = (0..self.dim())
                .map(|b| self.exact_basis[b][r].clone() * kernel[k][b].clone())
                .fold(Rational::zero(), |a, x| a + x);
            coeff.to_f64().expect("finite") * self.weights[r]
        });
        (self.orthonormal.transpose() * vecs).qr().q()
    }
}

pub fn dmatrix_to_matrix(g: &DMatrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)])
}
