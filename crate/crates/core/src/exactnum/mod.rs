//! Exact arithmetic over Q, Q(sqrt 2) and Q(cbrt 2), high-precision field
//! embeddings, and exact dense and sparse linear algebra.

mod cubic;
mod field;
pub mod hp;
mod matrix;
mod quad;
mod scalar;
pub mod serial;
pub mod sparse;

use thiserror::Error;

pub use cubic::CubicElement;
pub use field::{EmbeddingId, EmbeddingImage, FieldTag, NumberField};
pub use matrix::{span_rank, Echelon, ExactMatrix, Matrix};
pub use quad::QuadElement;
pub use scalar::{int, rat, rational_sign, Field, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("invalid embedding id {0}")]
    InvalidEmbedding(u8),
    #[error("embedding {0} is not real")]
    NotReal(EmbeddingId),
    #[error("embedding {0} is not an automorphism of the field")]
    NotAutomorphism(EmbeddingId),
    #[error("could not decide the sign of {0} at working precision")]
    SignUndecided(String),
    #[error("{field} element needs {expected} coefficients, found {found}")]
    Arity {
        field: FieldTag,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
}

/// Galois conjugation `a + b sqrt2 -> a - b sqrt2`.
pub fn galois_conjugate(x: &QuadElement) -> QuadElement {
    x.galois_conjugate()
}

/// Image of a `Q(cbrt 2)` element under embedding 1, 2 or 3.
pub fn cubic_embed(x: &CubicElement, embedding_id: u8) -> Result<EmbeddingImage, ExactError> {
    x.embed(EmbeddingId(embedding_id))
}

/// Rank over the coefficient field.
pub fn exact_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

/// Basis of the right null space.
pub fn exact_kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel()
}

/// Owned-operand arithmetic forwarded to the by-reference impls.
macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;
