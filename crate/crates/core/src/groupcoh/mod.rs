//! First cohomology of finitely presented groups with coefficients in
//! finite-dimensional representations, by Fox calculus evaluated directly in
//! the representation.

mod fox;
pub mod io;
mod presentation;
mod rep;
mod rigidity;

use thiserror::Error;

use crate::dynamics::DynError;

pub use fox::{fox_matrix, h1_dimension, h1_dimension_with_threshold, svd_null_space, CocycleBasis, CocycleSpaceReport, FoxMatrix, RankMethod, SVD_RANK_THRESHOLD};
pub use io::{bundled_corpus, parse_presentation, parse_representation, PresentationFile, RepresentationFile};
pub use presentation::{parse_symbol, Letter, Presentation, Word};
pub use rep::{cocycle_value, word_matrix, MatrixRep, FLOAT_RELATOR_TOL};
pub use rigidity::{truncated_rigidity_check, DegreeCohomology, TruncatedRigidity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupCohError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("image of generator {generator} is not invertible")]
    Singular { generator: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("harmonic degree {degree} needs {size} monomials, budget is {budget}")]
    BudgetExceeded { degree: usize, size: usize, budget: usize },
    #[error(transparent)]
    Dynamics(#[from] DynError),
    #[error("internal check failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}
