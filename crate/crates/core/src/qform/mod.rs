//! Quadratic forms over number fields and their integral orthogonal groups.

mod embed;
mod form;
pub mod io;
mod member;
mod search;

use thiserror::Error;

use crate::exactnum::{EmbeddingId, ExactError, FieldTag};

pub use embed::{embed_matrix, galois_embed_element, galois_embed_element_with_tol, EmbeddedElement, StandardFrame, EMBED_TOLERANCE};
pub use form::{congruence_diagonal, EmbeddingClassification, EmbeddingSignature, QuadraticForm};
pub use io::{parse_form, AnyForm, FormFile, GeneratorSet, GeneratorSetFile};
pub use member::{certify, inverse, is_member, product, reflection, reflection_pair, Certificate, OrthogonalElement};
pub use search::{isotropic_witness, matrix_height, plane_rotation_search, sort_by_height};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QFormError {
    #[error("form matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("form matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("embedding {0} is not real")]
    NotRealEmbedding(EmbeddingId),
    #[error("invalid embedding choice: {0}")]
    InvalidChoice(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a member of SO(Phi, O): failed {failed}")]
    NotMember { failed: String },
    #[error("reflection leaves the integral lattice")]
    NonIntegral,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("invalid plane ({i}, {j}) for a form in {n} variables")]
    InvalidPlane { i: usize, j: usize, n: usize },
    #[error("coefficients or height too large for the integer search")]
    CoefficientsTooLarge,
    #[error("embedded residual {residual:e} exceeds tolerance")]
    ResidualTooLarge { residual: f64 },
    #[error("real form is not definite")]
    NotDefinite,
    #[error("operation is not available over {0}")]
    UnsupportedField(FieldTag),
    #[error("entry {entry}: {reason}")]
    InvalidEntry { entry: usize, reason: String },
    #[error("cannot parse form file: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
