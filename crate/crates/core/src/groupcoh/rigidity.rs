//! Group cohomology with coefficients in harmonic polynomials of each
//! degree, for a group acting on `R^n` through orthogonal matrices. Vanishing
//! is only ever claimed for the degrees actually tested.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{harmonic_space, orthogonality_residual, DynError, ORTHOGONALITY_TOL};

use super::fox::h1_dimension_with_threshold;
use super::presentation::Presentation;
use super::rep::MatrixRep;
use super::GroupCohError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub space_dim: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub fixed_dim: usize,
    pub max_relator_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedRigidity {
    pub n: usize,
    pub degrees: Vec<DegreeCohomology>,
    /// Every tested degree has `H^1 = 0`. Says nothing about untested degrees.
    pub all_tested_vanish: bool,
}

pub fn truncated_rigidity_check(
    pres: &Presentation,
    images: &[DMatrix<f64>],
    degrees: &[usize],
    budget: usize,
    svd_threshold: f64,
) -> Result<TruncatedRigidity, GroupCohError> {
    let base = MatrixRep::float(pres, images.to_vec())?;
    let n = base.dim();
    for (i, g) in images.iter().enumerate() {
        let residual = orthogonality_residual(g);
        if residual > ORTHOGONALITY_TOL || g.determinant() < 0.0 {
            return Err(GroupCohError::InvalidRepresentation(format!(
                "image of {} is not in SO({n}) (orthogonality residual {residual:e})",
                pres.generators()[i]
            )));
        }
    }
    let results: Vec<Result<DegreeCohomology, GroupCohError>> = degrees
        .par_iter()
        .map(|&d| {
            let space = harmonic_space(n, d, budget).map_err(|e| match e {
                DynError::HarmonicBudget { d, size, budget, .. } => GroupCohError::BudgetExceeded { degree: d, size, budget },
                other => other.into(),
            })?;
            let reps: Vec<DMatrix<f64>> = images.iter().map(|g| space.representation(g)).collect();
            let rep = MatrixRep::float(pres, reps)?;
            let r = h1_dimension_with_threshold(pres, &rep, svd_threshold)?;
            Ok(DegreeCohomology {
                degree: d,
                space_dim: space.dim(),
                z1_dim: r.z1_dim,
                b1_dim: r.b1_dim,
                h1_dim: r.h1_dim,
                fixed_dim: r.fixed_dim,
                max_relator_residual: r.max_relator_residual,
            })
        })
        .collect();
    let degrees = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedRigidity {
        n,
        all_tested_vanish: degrees.iter().all(|d| d.h1_dim == 0),
        degrees,
    })
}
