use serde::Serialize;

use crate::exactnum::{Field, Matrix, NumberField};

use super::form::QuadraticForm;
use super::QFormError;

/// Outcome of the three exact membership checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub integral: bool,
    pub preserves_form: bool,
    pub unit_determinant: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.integral && self.preserves_form && self.unit_determinant
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.integral {
            out.push("integrality");
        }
        if !self.preserves_form {
            out.push("congruence");
        }
        if !self.unit_determinant {
            out.push("determinant");
        }
        out
    }
}

/// Element of `SO_Phi(O)`: integral, `M^T A M = A`, `det M = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalElement<K> {
    matrix: Matrix<K>,
    pub word: Option<String>,
    certificate: Certificate,
}

impl<K: NumberField> OrthogonalElement<K> {
    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn with_word(mut self, word: impl Into<String>) -> Self {
        self.word = Some(word.into());
        self
    }

    pub fn into_matrix(self) -> Matrix<K> {
        self.matrix
    }
}

pub fn certify<K: NumberField>(m: &Matrix<K>, phi: &QuadraticForm<K>) -> Result<Certificate, QFormError> {
    let n = phi.n();
    if m.rows() != n || m.cols() != n {
        return Err(QFormError::DimensionMismatch {
            expected: n,
            found: m.rows().max(m.cols()),
        });
    }
    let a = phi.matrix();
    Ok(Certificate {
        integral: m.data().iter().all(Field::is_integral),
        preserves_form: m.transpose().matmul(a).matmul(m) == *a,
        unit_determinant: m.determinant()? == K::one(),
    })
}

pub fn is_member<K: NumberField>(
    m: &Matrix<K>,
    phi: &QuadraticForm<K>,
) -> Result<OrthogonalElement<K>, QFormError> {
    let certificate = certify(m, phi)?;
    if !certificate.passed() {
        return Err(QFormError::NotMember {
            failed: certificate.failures().join(", "),
        });
    }
    Ok(OrthogonalElement {
        matrix: m.clone(),
        word: None,
        certificate,
    })
}

/// `M^{-1} = A^{-1} M^T A`, valid for every member.
pub fn inverse<K: NumberField>(m: &OrthogonalElement<K>, phi: &QuadraticForm<K>) -> OrthogonalElement<K> {
    let a = phi.matrix();
    let ainv = a.inverse().expect("form is nondegenerate");
    OrthogonalElement {
        matrix: ainv.matmul(&m.matrix.transpose()).matmul(a),
        word: m.word.as_ref().map(|w| format!("({w})^-1")),
        certificate: m.certificate,
    }
}

/// Product of two members; the group is closed so the certificate carries.
pub fn product<K: NumberField>(x: &OrthogonalElement<K>, y: &OrthogonalElement<K>) -> OrthogonalElement<K> {
    let word = match (&x.word, &y.word) {
        (Some(a), Some(b)) => Some(format!("{a}*{b}")),
        _ => None,
    };
    OrthogonalElement {
        matrix: x.matrix.matmul(&y.matrix),
        word,
        certificate: x.certificate,
    }
}

/// Reflection `x -> x - (2 B(x, v) / Phi(v)) v`, i.e. `I - (2/Phi(v)) v v^T A`.
pub fn reflection<K: NumberField>(phi: &QuadraticForm<K>, v: &[K]) -> Result<Matrix<K>, QFormError> {
    let n = phi.n();
    if v.len() != n {
        return Err(QFormError::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let q = phi.evaluate(v);
    let Some(qinv) = q.inv() else {
        return Err(QFormError::IsotropicVector);
    };
    let av = phi.matrix().mul_vec(v);
    let two = K::from_i64(2) * qinv;
    Ok(Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { K::one() } else { K::zero() };
        id - two.clone() * v[i].clone() * av[j].clone()
    }))
}

/// Certified `s_v s_w`; both reflections must be integral.
pub fn reflection_pair<K: NumberField>(
    phi: &QuadraticForm<K>,
    v: &[K],
    w: &[K],
) -> Result<OrthogonalElement<K>, QFormError> {
    let sv = reflection(phi, v)?;
    let sw = reflection(phi, w)?;
    if !sv.data().iter().all(Field::is_integral) || !sw.data().iter().all(Field::is_integral) {
        return Err(QFormError::NonIntegral);
    }
    is_member(&sv.matmul(&sw), phi)
}
