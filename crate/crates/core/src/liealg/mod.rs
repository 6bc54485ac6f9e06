//! Real Lie algebras given by rational structure constants.

mod algebra;
mod cohomology;
mod decompose;
pub mod io;
mod structure;
mod subspace;

use thiserror::Error;

pub use algebra::{builders, Bracket, LieAlgebra};
pub use cohomology::{
    binomial, ce_cohomology, ce_differential, subsets, CEComplexSlice, CohomologyReport,
    DEFAULT_CE_BUDGET,
};
pub use decompose::{detect_so3_factor, simple_decomposition, IdealDecomposition, IdealLabel};
pub use structure::{
    ad_of, adjoint_rep, derived_subalgebra, ideal_closure, is_compact_type, is_ideal,
    is_negative_definite, is_perfect, is_semisimple, killing_form, quotient_by_ideal,
    subalgebra, subalgebra_closure, Quotient,
};
pub use subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry {entry}: {reason}")]
    InvalidEntry { entry: usize, reason: String },
    #[error("antisymmetry violated at c[{i}][{j}][{k}]{}", entry.map(|e| format!(" (entry {e})")).unwrap_or_default())]
    Antisymmetry {
        entry: Option<usize>,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("algebra is not semisimple: Killing form is degenerate")]
    NotSemisimple,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("change-of-basis matrix is singular")]
    SingularChangeOfBasis,
    #[error("exterior power of degree {degree} has {size} monomials, budget is {budget}")]
    BudgetExceeded {
        degree: usize,
        size: usize,
        budget: usize,
    },
    #[error("degree {degree} exceeds algebra dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("internal check failed: {0}")]
    Verification(String),
    #[error("cannot parse structure file: {0}")]
    Parse(String),
}
