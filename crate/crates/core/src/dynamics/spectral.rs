use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::Matrix;

use super::ball::{BallElement, GeneratorImages};
use super::harmonic::{dmatrix_to_matrix, HarmonicSpace};
use super::DynError;

pub const DEFAULT_POWER_TOL: f64 = 1e-8;
pub const DEFAULT_POWER_ITERS: usize = 500;
pub const INVARIANT_SVD_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantMethod {
    Exact,
    Svd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapEstimate {
    pub degree: usize,
    pub space_dim: usize,
    pub invariant_dim: usize,
    pub invariant_method: InvariantMethod,
    /// Spectral norm of the averaging operator on the invariant-free part;
    /// `None` when that part is zero.
    pub estimate: Option<f64>,
    pub gap: Option<f64>,
    pub iterations: usize,
    pub tolerance: f64,
    pub converged: bool,
}

/// Orthonormal columns spanning the common fixed space of the generators.
fn invariant_subspace(
    gens: &GeneratorImages,
    space: &HarmonicSpace,
    reps: &[DMatrix<f64>],
    svd_threshold: f64,
) -> (DMatrix<f64>, InvariantMethod) {
    if let Some(exact) = &gens.exact {
        return (space.exact_invariants(exact), InvariantMethod::Exact);
    }
    let d = space.dim();
    let k = reps.len();
    if k == 0 {
        return (DMatrix::identity(d, d), InvariantMethod::Svd);
    }
    let mut stacked = DMatrix::zeros(k * d, d);
    for (i, r) in reps.iter().enumerate() {
        stacked
            .view_mut((i * d, 0), (d, d))
            .copy_from(&(r - DMatrix::identity(d, d)));
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let all: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < svd_threshold)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if all.is_empty() {
        return (DMatrix::zeros(d, 0), InvariantMethod::Svd);
    }
    (DMatrix::from_columns(&all).qr().q(), InvariantMethod::Svd)
}

/// Orthonormal basis of the orthogonal complement of orthonormal `inv`.
fn complement(inv: &DMatrix<f64>, d: usize) -> DMatrix<f64> {
    if inv.ncols() == 0 {
        return DMatrix::identity(d, d);
    }
    let proj = DMatrix::identity(d, d) - inv * inv.transpose();
    let eig = proj.symmetric_eigen();
    let cols: Vec<DVector<f64>> = (0..d)
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(d, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration. Returns `(value, iterations, converged)`.
pub fn power_iteration(m: &DMatrix<f64>, tol: f64, max_iters: usize) -> (f64, usize, bool) {
    let d = m.nrows();
    if d == 0 {
        return (0.0, 0, true);
    }
    let mut v = DVector::from_fn(d, |i, _| 1.0 + (i as f64 + 1.0).sqrt() * 1e-3);
    v /= v.norm();
    let mut lambda = v.dot(&(m * &v));
    for it in 1..=max_iters {
        let w = m * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return (0.0, it, true);
        }
        v = w / norm;
        let next = v.dot(&(m * &v));
        if (next - lambda).abs() <= tol * next.abs().max(f64::MIN_POSITIVE) {
            return (next, it, true);
        }
        lambda = next;
    }
    (lambda, max_iters, false)
}

/// Norm of `(1/|Q|) sum_{s in Q} pi(s)` on the invariant-free part of the
/// space, `Q` the generators together with their inverses.
pub fn averaging_operator_norm(
    gens: &GeneratorImages,
    space: &HarmonicSpace,
    tol: f64,
    max_iters: usize,
) -> Result<GapEstimate, DynError> {
    averaging_operator_norm_with_threshold(gens, space, tol, max_iters, INVARIANT_SVD_THRESHOLD)
}

/// As [`averaging_operator_norm`], with the singular-value cutoff used to
/// find invariants of float generators.
pub fn averaging_operator_norm_with_threshold(
    gens: &GeneratorImages,
    space: &HarmonicSpace,
    tol: f64,
    max_iters: usize,
    svd_threshold: f64,
) -> Result<GapEstimate, DynError> {
    gens.check_orthogonal()?;
    if gens.dim() != space.n {
        return Err(DynError::DimensionMismatch {
            expected: space.n,
            found: gens.dim(),
        });
    }
    let d = space.dim();
    let reps: Vec<DMatrix<f64>> = gens.float.iter().map(|g| space.representation(g)).collect();
    let mut avg = DMatrix::zeros(d, d);
    for r in &reps {
        avg += r + r.transpose();
    }
    avg /= (2 * reps.len().max(1)) as f64;
    let (inv, method) = invariant_subspace(gens, space, &reps, svd_threshold);
    let comp = complement(&inv, d);
    let base = GapEstimate {
        degree: space.degree,
        space_dim: d,
        invariant_dim: inv.ncols(),
        invariant_method: method,
        estimate: None,
        gap: None,
        iterations: 0,
        tolerance: tol,
        converged: true,
    };
    if comp.ncols() == 0 {
        return Ok(base);
    }
    let restricted = comp.transpose() * &avg * &comp;
    let gram = restricted.transpose() * &restricted;
    let (lambda, iterations, converged) = power_iteration(&gram, tol, max_iters);
    if !converged {
        return Err(DynError::NotConverged {
            degree: space.degree,
            iterations,
        });
    }
    let estimate = lambda.max(0.0).sqrt();
    Ok(GapEstimate {
        estimate: Some(estimate),
        gap: Some(1.0 - estimate),
        iterations,
        converged,
        ..base
    })
}

/// Elements summed per parallel task; fixed so the summation order does not
/// depend on the number of workers.
const CHUNK: usize = 256;

/// Spectral norm of `(1/|B|) sum_{g in B} pi(g)` on each space. All spaces
/// must share the ambient dimension.
pub fn weyl_deviation(elements: &[BallElement], spaces: &[&HarmonicSpace]) -> Result<Vec<f64>, DynError> {
    if elements.is_empty() {
        return Err(DynError::EmptyBall);
    }
    let Some(top) = spaces.iter().max_by_key(|s| s.degree) else {
        return Ok(Vec::new());
    };
    let degrees: Vec<usize> = spaces.iter().map(|s| s.degree).collect();
    let tables = top.tables();
    let partial: Vec<Vec<Matrix<f64>>> = elements
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut sums: Option<Vec<Matrix<f64>>> = None;
            for e in chunk {
                let chain = tables.substitution_chain(&dmatrix_to_matrix(&e.matrix.transpose()));
                let picked: Vec<Matrix<f64>> = degrees.iter().map(|&k| chain[k].clone()).collect();
                sums = Some(match sums {
                    None => picked,
                    Some(s) => s.iter().zip(&picked).map(|(a, b)| a.add(b)).collect(),
                });
            }
            sums.expect("chunks are nonempty")
        })
        .collect();
    let mut total = partial[0].clone();
    for p in &partial[1..] {
        total = total.iter().zip(p).map(|(a, b)| a.add(b)).collect();
    }
    let count = elements.len() as f64;
    Ok(spaces
        .iter()
        .zip(&total)
        .map(|(space, s)| {
            let avg = space.restrict(&s.scale(&(1.0 / count)));
            avg.singular_values().max()
        })
        .collect())
}
