use crate::exactnum::{int, Field, Matrix, Rational, Scalar};

use super::LieError;

/// Real Lie algebra with a rational basis, stored as the full structure
/// tensor `[e_i, e_j] = sum_k c[i][j][k] e_k`.
///
/// Construction validates antisymmetry and the Jacobi identity exactly, so a
/// value of this type is always a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    constants: Vec<Rational>,
}

/// One nonzero structure constant `c_{ij}^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rational,
}

impl LieAlgebra {
    /// Build from listed constants with `i < j`; entries with `i > j` are
    /// accepted as the antisymmetric partner and must agree with it.
    pub fn from_brackets(
        dim: usize,
        basis_names: Vec<String>,
        brackets: &[Bracket],
    ) -> Result<Self, LieError> {
        if basis_names.len() != dim {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: basis_names.len(),
            });
        }
        let mut constants = vec![Rational::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim * dim];
        for (n, b) in brackets.iter().enumerate() {
            let bad = |reason: String| LieError::InvalidEntry { entry: n, reason };
            if b.i >= dim || b.j >= dim || b.k >= dim {
                return Err(bad(format!(
                    "index out of range in [{}, {}, {}] for dimension {dim}",
                    b.i, b.j, b.k
                )));
            }
            if b.i == b.j {
                if !b.coeff.is_zero() {
                    return Err(LieError::Antisymmetry {
                        entry: Some(n),
                        i: b.i,
                        j: b.j,
                        k: b.k,
                    });
                }
                continue;
            }
            let (lo, hi, c) = if b.i < b.j {
                (b.i, b.j, b.coeff.clone())
            } else {
                (b.j, b.i, -b.coeff.clone())
            };
            let idx = (lo * dim + hi) * dim + b.k;
            if seen[idx] {
                if constants[idx] != c {
                    return Err(LieError::Antisymmetry {
                        entry: Some(n),
                        i: b.i,
                        j: b.j,
                        k: b.k,
                    });
                }
                continue;
            }
            seen[idx] = true;
            constants[idx] = c.clone();
            constants[(hi * dim + lo) * dim + b.k] = -c;
        }
        Self::from_tensor(dim, basis_names, constants)
    }

    /// Build from the full `dim^3` tensor, validating antisymmetry and Jacobi.
    pub fn from_tensor(
        dim: usize,
        basis_names: Vec<String>,
        constants: Vec<Rational>,
    ) -> Result<Self, LieError> {
        if constants.len() != dim * dim * dim {
            return Err(LieError::DimensionMismatch {
                expected: dim * dim * dim,
                found: constants.len(),
            });
        }
        if basis_names.len() != dim {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: basis_names.len(),
            });
        }
        let g = LieAlgebra {
            dim,
            basis_names,
            constants,
        };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = self.c(i, j, k);
                    let b = self.c(j, i, k);
                    if *a != -b.clone() {
                        return Err(LieError::Antisymmetry { entry: None, i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact Jacobi check on all basis triples `i < j < k`.
    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t1 = self.bracket_vec_basis(&self.basis_bracket(i, j).to_vec(), k);
                    let t2 = self.bracket_vec_basis(&self.basis_bracket(j, k).to_vec(), i);
                    let t3 = self.bracket_vec_basis(&self.basis_bracket(k, i).to_vec(), j);
                    for m in 0..n {
                        let s = t1[m].clone() + t2[m].clone() + t3[m].clone();
                        if !s.is_zero() {
                            return Err(LieError::Jacobi { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// `c_{ij}^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    /// `[x, e_j]`.
    fn bracket_vec_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].clone() + xi.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let col = self.bracket_vec_basis(x, j);
            for k in 0..self.dim {
                if !col[k].is_zero() {
                    out[k] = out[k].clone() + yj.clone() * col[k].clone();
                }
            }
        }
        out
    }

    /// Nonzero constants with `i < j`, in lexicographic order.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.push(Bracket {
                            i,
                            j,
                            k,
                            coeff: c.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Field::is_zero)
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Structure constants in the basis `f_a = sum_i p[i][a] e_i`.
    pub fn change_basis(&self, p: &Matrix<Rational>) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: p.rows(),
            });
        }
        let pinv = p.inverse().map_err(|_| LieError::SingularChangeOfBasis)?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| p.column(a)).collect();
        let mut constants = vec![Rational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&cols[a], &cols[b]);
                let coords = pinv.mul_vec(&br);
                for (k, v) in coords.into_iter().enumerate() {
                    constants[(a * n + b) * n + k] = v;
                }
            }
        }
        let names = (0..n).map(|a| format!("f{}", a + 1)).collect();
        LieAlgebra::from_tensor(n, names, constants)
    }

    /// Restrict to a subalgebra given by an echelon basis; coordinates are
    /// read at the pivot positions.
    pub(crate) fn restrict(
        &self,
        basis: &[Vec<Rational>],
        pivots: &[usize],
        names: Vec<String>,
    ) -> Result<LieAlgebra, LieError> {
        let m = basis.len();
        let mut constants = vec![Rational::zero(); m * m * m];
        for a in 0..m {
            for b in 0..m {
                let br = self.bracket(&basis[a], &basis[b]);
                let coords: Vec<Rational> = pivots.iter().map(|&p| br[p].clone()).collect();
                let back = combine(basis, &coords, self.dim);
                if back != br {
                    return Err(LieError::NotSubalgebra);
                }
                for (k, v) in coords.into_iter().enumerate() {
                    constants[(a * m + b) * m + k] = v;
                }
            }
        }
        LieAlgebra::from_tensor(m, names, constants)
    }
}

pub(crate) fn combine(basis: &[Vec<Rational>], coeffs: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for k in 0..n {
            if !v[k].is_zero() {
                out[k] = out[k].clone() + c.clone() * v[k].clone();
            }
        }
    }
    out
}

/// Built-in algebras.
pub mod builders {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn abelian(n: usize) -> LieAlgebra {
        LieAlgebra::from_brackets(n, names("e", n), &[]).expect("abelian algebra is valid")
    }

    /// `so(3)` with `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
    pub fn so3() -> LieAlgebra {
        let b = |i, j, k, c| Bracket {
            i,
            j,
            k,
            coeff: int(c),
        };
        LieAlgebra::from_brackets(3, names("e", 3), &[b(0, 1, 2, 1), b(1, 2, 0, 1), b(0, 2, 1, -1)])
            .expect("so(3) is valid")
    }

    /// Heisenberg algebra `[e1, e2] = e3`.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            names("e", 3),
            &[Bracket {
                i: 0,
                j: 1,
                k: 2,
                coeff: int(1),
            }],
        )
        .expect("Heisenberg algebra is valid")
    }

    /// Two-dimensional non-abelian algebra `[x, y] = y`.
    pub fn affine_line() -> LieAlgebra {
        LieAlgebra::from_brackets(
            2,
            vec!["x".into(), "y".into()],
            &[Bracket {
                i: 0,
                j: 1,
                k: 1,
                coeff: int(1),
            }],
        )
        .expect("aff(1) is valid")
    }

    /// Index pairs `(a, b)`, `a < b`, labelling the basis `E_ab = e_a e_b^T - e_b e_a^T`.
    pub fn so_basis_pairs(n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                out.push((a, b));
            }
        }
        out
    }

    /// Antisymmetric matrix `E_ab` of size `n`.
    pub fn so_basis_matrix(n: usize, a: usize, b: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |i, j| {
            if i == a && j == b {
                int(1)
            } else if i == b && j == a {
                int(-1)
            } else {
                int(0)
            }
        })
    }

    /// `so(n)` in the basis `E_ab`, `a < b`, ordered lexicographically; the
    /// constants are read off from matrix commutators.
    pub fn so(n: usize) -> LieAlgebra {
        assert!(n >= 2, "so(n) needs n >= 2");
        let pairs = so_basis_pairs(n);
        let d = pairs.len();
        let mats: Vec<_> = pairs.iter().map(|&(a, b)| so_basis_matrix(n, a, b)).collect();
        let mut constants = vec![Rational::zero(); d * d * d];
        for x in 0..d {
            for y in 0..d {
                let comm = mats[x].matmul(&mats[y]).sub(&mats[y].matmul(&mats[x]));
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    constants[(x * d + y) * d + k] = comm[(a, b)].clone();
                }
            }
        }
        let names = pairs
            .iter()
            .map(|(a, b)| format!("E{}{}", a + 1, b + 1))
            .collect();
        LieAlgebra::from_tensor(d, names, constants).expect("so(n) is valid")
    }

    /// Direct sum with block-diagonal structure constants.
    pub fn direct_sum(parts: &[LieAlgebra]) -> LieAlgebra {
        let n: usize = parts.iter().map(LieAlgebra::dim).sum();
        let mut brackets = Vec::new();
        let mut names = Vec::new();
        let mut off = 0;
        for (p, g) in parts.iter().enumerate() {
            for b in g.brackets() {
                brackets.push(Bracket {
                    i: b.i + off,
                    j: b.j + off,
                    k: b.k + off,
                    coeff: b.coeff,
                });
            }
            names.extend(g.basis_names().iter().map(|s| format!("{s}_{}", p + 1)));
            off += g.dim();
        }
        LieAlgebra::from_brackets(n, names, &brackets).expect("direct sum is valid")
    }
}
