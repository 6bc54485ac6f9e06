use crate::exactnum::{Field, Matrix, Rational, Scalar};

use super::algebra::LieAlgebra;
use super::subspace::Subspace;
use super::LieError;

/// Matrices `ad(e_i)` with `(ad e_i)_{kj} = c_{ij}^k`, checked to be a
/// representation.
pub fn adjoint_rep(g: &LieAlgebra) -> Result<Vec<Matrix<Rational>>, LieError> {
    let ads = adjoint_matrices(g);
    let n = g.dim();
    for i in 0..n {
        if !ads[i].trace().is_zero() {
            return Err(LieError::Verification(format!("ad(e{}) has nonzero trace", i + 1)));
        }
        for j in (i + 1)..n {
            let comm = ads[i].matmul(&ads[j]).sub(&ads[j].matmul(&ads[i]));
            let mut lhs = Matrix::zeros(n, n);
            for (k, c) in g.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&ads[k].scale(c));
                }
            }
            if lhs != comm {
                return Err(LieError::Verification(format!(
                    "ad[e{}, e{}] differs from the commutator of ad matrices",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(ads)
}

pub(crate) fn adjoint_matrices(g: &LieAlgebra) -> Vec<Matrix<Rational>> {
    let n = g.dim();
    (0..n)
        .map(|i| Matrix::from_fn(n, n, |k, j| g.c(i, j, k).clone()))
        .collect()
}

/// `ad(x)` for an arbitrary element.
pub fn ad_of(g: &LieAlgebra, x: &[Rational]) -> Matrix<Rational> {
    let n = g.dim();
    let mut m = Matrix::zeros(n, n);
    for (j, col) in (0..n).map(|j| (j, g.bracket(x, &g.unit(j)))) {
        for (k, v) in col.into_iter().enumerate() {
            m[(k, j)] = v;
        }
    }
    m
}

/// `kappa_ij = sum_{k,l} c_{il}^k c_{jk}^l`.
pub fn killing_form(g: &LieAlgebra) -> Matrix<Rational> {
    let n = g.dim();
    let mut kappa = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = Rational::zero();
            for l in 0..n {
                for k in 0..n {
                    let a = g.c(i, l, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = g.c(j, k, l);
                    if !b.is_zero() {
                        s = s + a.clone() * b.clone();
                    }
                }
            }
            kappa[(i, j)] = s.clone();
            kappa[(j, i)] = s;
        }
    }
    kappa
}

pub fn is_semisimple(g: &LieAlgebra) -> bool {
    g.dim() > 0
        && !killing_form(g)
            .determinant()
            .expect("Killing form is square")
            .is_zero()
}

/// Negative definiteness via leading principal minors: `(-1)^k D_k > 0`.
pub fn is_negative_definite(m: &Matrix<Rational>) -> bool {
    let n = m.rows();
    (1..=n).all(|k| {
        let d = m.submatrix(0..k, 0..k).determinant().expect("square minor");
        let signed = if k % 2 == 1 { -d } else { d };
        signed > Rational::zero()
    })
}

pub fn is_compact_type(g: &LieAlgebra) -> bool {
    g.dim() > 0 && is_negative_definite(&killing_form(g))
}

/// `[g, g]`.
pub fn derived_subalgebra(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let mut vecs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            vecs.push(g.basis_bracket(i, j).to_vec());
        }
    }
    Subspace::span(n, &vecs)
}

pub fn is_perfect(g: &LieAlgebra) -> bool {
    derived_subalgebra(g).dim() == g.dim()
}

/// Smallest ideal containing `seeds`.
pub fn ideal_closure(g: &LieAlgebra, seeds: &[Vec<Rational>]) -> Subspace {
    let n = g.dim();
    let mut current = Subspace::span(n, seeds);
    loop {
        let mut vecs = current.basis().to_vec();
        for v in current.basis() {
            for j in 0..n {
                vecs.push(g.bracket(&g.unit(j), v));
            }
        }
        let next = Subspace::span(n, &vecs);
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

/// Smallest subalgebra containing `seeds`.
pub fn subalgebra_closure(g: &LieAlgebra, seeds: &[Vec<Rational>]) -> Subspace {
    let n = g.dim();
    let mut current = Subspace::span(n, seeds);
    loop {
        let b = current.basis();
        let mut vecs = b.to_vec();
        for x in 0..b.len() {
            for y in (x + 1)..b.len() {
                vecs.push(g.bracket(&b[x], &b[y]));
            }
        }
        let next = Subspace::span(n, &vecs);
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

pub fn is_ideal(g: &LieAlgebra, h: &Subspace) -> bool {
    h.basis()
        .iter()
        .all(|v| (0..g.dim()).all(|j| h.contains(&g.bracket(&g.unit(j), v))))
}

/// Structure constants of a subalgebra in its echelon basis.
pub fn subalgebra(g: &LieAlgebra, h: &Subspace) -> Result<LieAlgebra, LieError> {
    let names = (1..=h.dim()).map(|i| format!("h{i}")).collect();
    g.restrict(h.basis(), h.pivots(), names)
}

/// `g / h` together with the projection matrix `pr` (`dim(g/h) x dim g`).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub projection: Matrix<Rational>,
    /// Ambient basis indices whose images form the quotient basis.
    pub complement: Vec<usize>,
}

pub fn quotient_by_ideal(g: &LieAlgebra, h: &Subspace) -> Result<Quotient, LieError> {
    let n = g.dim();
    if h.ambient_dim() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            found: h.ambient_dim(),
        });
    }
    if !is_ideal(g, h) {
        return Err(LieError::NotAnIdeal);
    }
    let complement = h.complement_units();
    let m = complement.len();
    // reducing e_j modulo h zeroes the pivot entries, so the quotient
    // coordinates are the remaining complement entries
    let project = |v: &[Rational]| -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in h.basis().iter().zip(h.pivots()) {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                if !row[k].is_zero() {
                    r[k] = r[k].clone() - f.clone() * row[k].clone();
                }
            }
        }
        complement.iter().map(|&c| r[c].clone()).collect()
    };
    let projection = Matrix::from_columns(m, &(0..n).map(|j| project(&g.unit(j))).collect::<Vec<_>>());
    let mut constants = vec![Rational::zero(); m * m * m];
    for a in 0..m {
        for b in 0..m {
            let br = g.basis_bracket(complement[a], complement[b]);
            for (k, v) in project(br).into_iter().enumerate() {
                constants[(a * m + b) * m + k] = v;
            }
        }
    }
    let names = complement
        .iter()
        .map(|&c| format!("[{}]", g.basis_names()[c]))
        .collect();
    let q = LieAlgebra::from_tensor(m, names, constants)?;
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = projection.mul_vec(g.basis_bracket(i, j));
            let rhs = q.bracket(&projection.column(i), &projection.column(j));
            if lhs != rhs {
                return Err(LieError::Verification(format!(
                    "projection is not a homomorphism on (e{}, e{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(Quotient {
        algebra: q,
        projection,
        complement,
    })
}
