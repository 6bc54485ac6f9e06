use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::hp::HpReal;
use super::scalar::{Field, Rational};
use super::ExactError;

/// Index of a field embedding into the complex numbers, 1-based.
/// Embedding 1 is always the identity (the real embedding fixed by the
/// construction of the field as a subfield of the reals).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbeddingId(pub u8);

impl fmt::Display for EmbeddingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma{}", self.0)
    }
}

/// Which coefficient field a file or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(sqrt2)")]
    Sqrt2,
    #[serde(rename = "Q(cbrt2)")]
    Cbrt2,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Rational => "Q",
            FieldTag::Sqrt2 => "Q(sqrt2)",
            FieldTag::Cbrt2 => "Q(cbrt2)",
        })
    }
}

/// Image of a field element under an embedding, with 192 fractional bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingImage {
    pub embedding: EmbeddingId,
    pub real_part: HpReal,
    pub imag_part: HpReal,
}

impl EmbeddingImage {
    pub fn real(embedding: EmbeddingId, re: HpReal) -> Self {
        EmbeddingImage {
            embedding,
            real_part: re,
            imag_part: HpReal::zero(),
        }
    }

    pub fn re(&self) -> f64 {
        self.real_part.to_f64()
    }

    pub fn im(&self) -> f64 {
        self.imag_part.to_f64()
    }
}

/// Number fields with explicit embeddings. Only the three fields of the
/// construction implement this: Q, Q(sqrt 2) and Q(cbrt 2).
pub trait NumberField: Field + fmt::Display {
    const TAG: FieldTag;

    /// Every embedding K -> C.
    fn embeddings() -> Vec<EmbeddingId>;

    /// One embedding from each complex-conjugate pair.
    fn representatives() -> Vec<EmbeddingId>;

    fn is_real_embedding(id: EmbeddingId) -> bool;

    fn embed(&self, id: EmbeddingId) -> Result<EmbeddingImage, ExactError>;

    /// Exact sign of the image under a real embedding.
    fn real_sign(&self, id: EmbeddingId) -> Result<Ordering, ExactError>;

    /// The embedding as an automorphism of K, when it is one.
    fn galois_image(&self, id: EmbeddingId) -> Result<Self, ExactError>;

    /// Rational coefficients in the power basis of K.
    fn coefficients(&self) -> Vec<Rational>;

    fn from_coefficients(coeffs: &[Rational]) -> Result<Self, ExactError>;

    fn embed_f64(&self, id: EmbeddingId) -> Result<f64, ExactError> {
        if !Self::is_real_embedding(id) {
            return Err(ExactError::NotReal(id));
        }
        Ok(self.embed(id)?.re())
    }
}

pub(crate) fn check_embedding(id: EmbeddingId, count: u8) -> Result<(), ExactError> {
    if id.0 == 0 || id.0 > count {
        Err(ExactError::InvalidEmbedding(id.0))
    } else {
        Ok(())
    }
}

impl NumberField for Rational {
    const TAG: FieldTag = FieldTag::Rational;

    fn embeddings() -> Vec<EmbeddingId> {
        vec![EmbeddingId(1)]
    }

    fn representatives() -> Vec<EmbeddingId> {
        vec![EmbeddingId(1)]
    }

    fn is_real_embedding(_: EmbeddingId) -> bool {
        true
    }

    fn embed(&self, id: EmbeddingId) -> Result<EmbeddingImage, ExactError> {
        check_embedding(id, 1)?;
        Ok(EmbeddingImage::real(id, HpReal::from_rational(self)))
    }

    fn real_sign(&self, id: EmbeddingId) -> Result<Ordering, ExactError> {
        check_embedding(id, 1)?;
        Ok(self.cmp(&<Rational as num_traits::Zero>::zero()))
    }

    fn galois_image(&self, id: EmbeddingId) -> Result<Self, ExactError> {
        check_embedding(id, 1)?;
        Ok(self.clone())
    }

    fn coefficients(&self) -> Vec<Rational> {
        vec![self.clone()]
    }

    fn from_coefficients(coeffs: &[Rational]) -> Result<Self, ExactError> {
        match coeffs {
            [q] => Ok(q.clone()),
            _ => Err(ExactError::Arity {
                field: FieldTag::Rational,
                expected: 1,
                found: coeffs.len(),
            }),
        }
    }
}
