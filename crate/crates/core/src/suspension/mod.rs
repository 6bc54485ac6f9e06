//! Suspension foliations in miniature: leaf combinatorics for actions on
//! finite fibres, the flat connection form on the group factor, and the
//! algebraic obstructions to rigidity.

mod chart;
mod orbits;
mod pipeline;

use thiserror::Error;

pub use chart::{
    connection_form, exp_derivative, invariance_residual, mc_residual, mc_residual_for, skew_basis, ChartKind, MCChart,
    MCResidualReport, DEFAULT_CHART_RADIUS, DEFAULT_STEPS, ROUNDOFF_FLOOR,
};
pub use orbits::{orbits, FiniteAction, FiniteActionFile, OrbitReport};
pub use pipeline::{rigidity_pipeline, IdealReduction, ObstructionReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuspensionError {
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("singular sample: {0}")]
    SingularSample(String),
}
