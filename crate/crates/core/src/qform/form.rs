use std::cmp::Ordering;

use serde::Serialize;

use crate::exactnum::{EmbeddingId, Field, FieldTag, Matrix, NumberField, Scalar};

use super::QFormError;

/// Nondegenerate quadratic form `Phi(x) = x^T A x` with symmetric `A` over `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<K> {
    matrix: Matrix<K>,
}

impl<K: NumberField> QuadraticForm<K> {
    pub fn new(matrix: Matrix<K>) -> Result<Self, QFormError> {
        if !matrix.is_square() {
            return Err(QFormError::NotSquare(matrix.rows(), matrix.cols()));
        }
        if !matrix.is_symmetric() {
            return Err(QFormError::NotSymmetric);
        }
        if matrix.determinant()?.is_zero() {
            return Err(QFormError::Degenerate);
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn diagonal(coeffs: &[K]) -> Result<Self, QFormError> {
        Self::new(Matrix::diagonal(coeffs))
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn field_tag(&self) -> FieldTag {
        K::TAG
    }

    /// `B(x, y) = x^T A y`, so that `Phi(v) = B(v, v)`.
    pub fn polar(&self, x: &[K], y: &[K]) -> K {
        let ay = self.matrix.mul_vec(y);
        x.iter()
            .zip(&ay)
            .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn evaluate(&self, v: &[K]) -> K {
        self.polar(v, v)
    }

    pub fn determinant(&self) -> K {
        self.matrix.determinant().expect("form matrix is square")
    }

    /// `(-1)^{n(n-1)/2} det A`.
    pub fn discriminant(&self) -> K {
        let n = self.n();
        let d = self.determinant();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Form with the embedding applied to every coefficient; the embedding
    /// must be an automorphism of `K`.
    pub fn conjugate(&self, sigma: EmbeddingId) -> Result<Self, QFormError> {
        let m = self.matrix.try_map(|x| x.galois_image(sigma))?;
        Ok(QuadraticForm { matrix: m })
    }

    /// Signature `(p, q)` of the real form obtained through `sigma`.
    pub fn real_signature(&self, sigma: EmbeddingId) -> Result<(usize, usize), QFormError> {
        if !K::embeddings().contains(&sigma) {
            return Err(QFormError::Exact(crate::exactnum::ExactError::InvalidEmbedding(sigma.0)));
        }
        if !K::is_real_embedding(sigma) {
            return Err(QFormError::NotRealEmbedding(sigma));
        }
        let pivots = congruence_diagonal(&self.matrix)?;
        let (mut p, mut q) = (0, 0);
        for d in &pivots {
            match d.real_sign(sigma)? {
                Ordering::Greater => p += 1,
                Ordering::Less => q += 1,
                Ordering::Equal => return Err(QFormError::Degenerate),
            }
        }
        Ok((p, q))
    }

    pub fn is_definite_under(&self, sigma: EmbeddingId) -> Result<bool, QFormError> {
        let n = self.n();
        let (p, q) = self.real_signature(sigma)?;
        Ok(p == n || q == n)
    }

    /// Sufficient condition for anisotropy over `K`: some real embedding
    /// makes the form definite, so a nontrivial zero over `K` would map to
    /// a nontrivial real zero of a definite form.
    pub fn anisotropy_by_conjugate_definiteness(&self) -> bool {
        K::representatives()
            .into_iter()
            .filter(|s| K::is_real_embedding(*s))
            .any(|s| self.is_definite_under(s).unwrap_or(false))
    }

    pub fn classify_embeddings(&self, chosen: Option<&[EmbeddingId]>) -> Result<EmbeddingClassification, QFormError> {
        let all = K::representatives();
        let mut definite = Vec::new();
        let mut signatures = Vec::new();
        for &s in &all {
            if K::is_real_embedding(s) {
                let sig = self.real_signature(s)?;
                if sig.0 == self.n() || sig.1 == self.n() {
                    definite.push(s);
                }
                signatures.push(EmbeddingSignature {
                    embedding: s,
                    real: true,
                    signature: Some(sig),
                });
            } else {
                signatures.push(EmbeddingSignature {
                    embedding: s,
                    real: false,
                    signature: None,
                });
            }
        }
        let chosen: Vec<EmbeddingId> = chosen.map(<[_]>::to_vec).unwrap_or_else(|| all.clone());
        for s in &chosen {
            if !all.contains(s) {
                return Err(QFormError::InvalidChoice(format!("{s} is not a representative embedding")));
            }
        }
        for s in &all {
            if !definite.contains(s) && !chosen.contains(s) {
                return Err(QFormError::InvalidChoice(format!(
                    "{s} has an indefinite conjugate form and must be chosen"
                )));
            }
        }
        Ok(EmbeddingClassification {
            all_embeddings: all,
            definite_set: definite,
            chosen_set: chosen,
            signatures,
        })
    }
}

/// Real signature data for one embedding; imaginary embeddings have none.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingSignature {
    pub embedding: EmbeddingId,
    pub real: bool,
    pub signature: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingClassification {
    pub all_embeddings: Vec<EmbeddingId>,
    pub definite_set: Vec<EmbeddingId>,
    pub chosen_set: Vec<EmbeddingId>,
    pub signatures: Vec<EmbeddingSignature>,
}

impl EmbeddingClassification {
    /// Lattice criterion needs some embedding with an indefinite form.
    pub fn lattice_condition(&self) -> bool {
        self.definite_set.len() != self.all_embeddings.len()
    }
}

/// Diagonal of a symmetric congruence `P^T A P = D` computed over `K`.
pub fn congruence_diagonal<K: Field>(a: &Matrix<K>) -> Result<Vec<K>, QFormError> {
    let n = a.rows();
    let mut m = a.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !m[(j, j)].is_zero()) {
                swap_sym(&mut m, k, j);
            } else if let Some(j) = ((k + 1)..n).find(|&j| !m[(k, j)].is_zero()) {
                // x_k -> x_k + x_j makes the pivot 2 m_kj
                add_sym(&mut m, k, j);
            } else {
                return Err(QFormError::Degenerate);
            }
        }
        let p = m[(k, k)].clone();
        let pinv = p.inv().expect("pivot is nonzero");
        for i in (k + 1)..n {
            let f = m[(i, k)].clone() * pinv.clone();
            if f.is_zero() {
                continue;
            }
            for j in (k + 1)..n {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
        for i in (k + 1)..n {
            m[(i, k)] = K::zero();
            m[(k, i)] = K::zero();
        }
        diag.push(p);
    }
    Ok(diag)
}

fn swap_sym<K: Scalar>(m: &mut Matrix<K>, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Row and column `k += j`.
fn add_sym<K: Scalar>(m: &mut Matrix<K>, k: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let v = m[(k, c)].clone() + m[(j, c)].clone();
        m[(k, c)] = v;
    }
    for r in 0..n {
        let v = m[(r, k)].clone() + m[(r, j)].clone();
        m[(r, k)] = v;
    }
}
