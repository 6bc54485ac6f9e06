use nalgebra::DMatrix;

use crate::exactnum::{EmbeddingId, Matrix, NumberField};

use super::form::QuadraticForm;
use super::member::OrthogonalElement;
use super::QFormError;

pub const EMBED_TOLERANCE: f64 = 1e-12;

/// Float image of a member under a real embedding.
#[derive(Clone, Debug)]
pub struct EmbeddedElement {
    pub matrix: DMatrix<f64>,
    /// `|| M^T A_sigma M - A_sigma ||_inf` in floating point.
    pub residual: f64,
}

/// Entrywise image through a real embedding, each entry rounded once from
/// a 192-bit value.
pub fn embed_matrix<K: NumberField>(m: &Matrix<K>, sigma: EmbeddingId) -> Result<DMatrix<f64>, QFormError> {
    let mut out = DMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)].embed_f64(sigma)?;
        }
    }
    Ok(out)
}

pub fn galois_embed_element<K: NumberField>(
    m: &OrthogonalElement<K>,
    phi: &QuadraticForm<K>,
    sigma: EmbeddingId,
) -> Result<EmbeddedElement, QFormError> {
    galois_embed_element_with_tol(m, phi, sigma, EMBED_TOLERANCE)
}

pub fn galois_embed_element_with_tol<K: NumberField>(
    m: &OrthogonalElement<K>,
    phi: &QuadraticForm<K>,
    sigma: EmbeddingId,
    tol: f64,
) -> Result<EmbeddedElement, QFormError> {
    let mf = embed_matrix(m.matrix(), sigma)?;
    let af = embed_matrix(phi.matrix(), sigma)?;
    let r = mf.transpose() * &af * &mf - &af;
    let residual = r.amax();
    if !(residual <= tol) {
        return Err(QFormError::ResidualTooLarge { residual });
    }
    Ok(EmbeddedElement { matrix: mf, residual })
}

/// For a definite real form `A = L L^T` (or `-A`), conjugates an element of
/// `O(A)` into the standard orthogonal group: `O = L^T M L^{-T}`.
#[derive(Clone, Debug)]
pub struct StandardFrame {
    l: DMatrix<f64>,
    l_inv_t: DMatrix<f64>,
}

impl StandardFrame {
    pub fn new(a: &DMatrix<f64>) -> Result<Self, QFormError> {
        let pos = if a[(0, 0)] < 0.0 { -a.clone() } else { a.clone() };
        let chol = nalgebra::Cholesky::new(pos).ok_or(QFormError::NotDefinite)?;
        let l = chol.l();
        let l_inv_t = l
            .clone()
            .try_inverse()
            .ok_or(QFormError::NotDefinite)?
            .transpose();
        Ok(StandardFrame { l, l_inv_t })
    }

    pub fn to_standard(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        self.l.transpose() * m * &self.l_inv_t
    }
}
