//! Word balls in compact orthogonal groups and the density, equidistribution
//! and spectral-gap diagnostics computed on them.

mod ball;
pub mod cache;
mod density;
mod harmonic;
mod spectral;

use thiserror::Error;

pub use ball::{
    enumerate_ball, letter_name, orthogonality_residual, plane_rotation, rational_to_float, word_string,
    BallElement, GeneratorImages, WordBall, DEFAULT_DEDUP_TOL, DEFAULT_ELEMENT_CAP, ORTHOGONALITY_TOL,
};
pub use density::{covering_radius, haar_probes, DensityReport};
pub use harmonic::{
    harmonic_dimension, harmonic_space, laplacian_matrix, monomials, HarmonicSpace, MonomialTables,
    DEFAULT_MONOMIAL_BUDGET,
};
pub use spectral::{
    averaging_operator_norm, averaging_operator_norm_with_threshold, power_iteration, weyl_deviation, GapEstimate, InvariantMethod, DEFAULT_POWER_ITERS,
    DEFAULT_POWER_TOL, INVARIANT_SVD_THRESHOLD,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynError {
    #[error("ball exceeds the element cap of {cap} (reached {elements})")]
    BudgetExceeded { elements: usize, cap: usize },
    #[error("generator {index} is not orthogonal (residual {residual:e})")]
    NotOrthogonal { index: usize, residual: f64 },
    #[error("no generators given")]
    NoGenerators,
    #[error("at most 127 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("ball is empty")]
    EmptyBall,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree {d} in {n} variables has {size} monomials, budget is {budget}")]
    HarmonicBudget {
        n: usize,
        d: usize,
        size: usize,
        budget: usize,
    },
    #[error("power iteration did not converge in degree {degree} after {iterations} iterations")]
    NotConverged { degree: usize, iterations: usize },
    #[error("internal check failed: {0}")]
    Verification(String),
    #[error("ball cache rejected: {0}")]
    Cache(String),
}
