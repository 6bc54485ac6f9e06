//! Crossed homomorphisms `psi(xy) = psi(x) + x psi(y)` are determined by their
//! values on generators; they are well defined on the group exactly when the
//! Fox derivatives of every relator, evaluated in the representation, kill
//! the vector of generator values.

use nalgebra::{DMatrix, DVector};
use serde::{Serialize, Serializer};

use crate::exactnum::serial::format_rational;
use crate::exactnum::{Matrix, Rational, Scalar};

use super::presentation::Presentation;
use super::rep::{Images, Kind, MatrixRep};
use super::GroupCohError;

/// Singular values below this count as zero for float representations.
pub const SVD_RANK_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug)]
pub enum FoxMatrix {
    Exact(Matrix<Rational>),
    Float(DMatrix<f64>),
}

impl FoxMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            FoxMatrix::Exact(m) => (m.rows(), m.cols()),
            FoxMatrix::Float(m) => (m.nrows(), m.ncols()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Exact,
    Svd,
}

/// Basis of `Z^1`; element `k` holds `psi_k(g_i)` at index `[k][i]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleBasis {
    Exact(#[serde(serialize_with = "serialize_exact_basis")] Vec<Vec<Vec<Rational>>>),
    Float(Vec<Vec<Vec<f64>>>),
}

fn serialize_exact_basis<S: Serializer>(b: &[Vec<Vec<Rational>>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<Vec<String>>> = b
        .iter()
        .map(|psi| psi.iter().map(|v| v.iter().map(format_rational).collect()).collect())
        .collect();
    text.serialize(s)
}

impl CocycleBasis {
    pub fn len(&self) -> usize {
        match self {
            CocycleBasis::Exact(b) => b.len(),
            CocycleBasis::Float(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleSpaceReport {
    pub method: RankMethod,
    pub generator_count: usize,
    pub relator_count: usize,
    pub rep_dim: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    /// Dimension of the common fixed space `V^Gamma`.
    pub fixed_dim: usize,
    pub max_relator_residual: f64,
    pub cocycle_basis: CocycleBasis,
}

fn fox_blocks<T: Scalar>(pres: &Presentation, im: &Images<T>, dim: usize) -> Matrix<T> {
    let s = pres.generator_count();
    let mut f = Matrix::zeros(pres.relators().len() * dim, s * dim);
    for (r, word) in pres.relators().iter().enumerate() {
        let mut prefix = Matrix::<T>::identity(dim);
        for l in word {
            let g = l.generator;
            if l.inverse {
                // d(u g^-1 w)/dg picks up -pi(u g^-1)
                prefix = prefix.matmul(&im.invs[g]);
                f.add_block(r * dim, g * dim, &prefix.scale(&T::from_i64(-1)));
            } else {
                f.add_block(r * dim, g * dim, &prefix);
                prefix = prefix.matmul(&im.gens[g]);
            }
        }
    }
    f
}

/// Stacked `pi(g_i) - I`; its kernel is `V^Gamma`.
fn fixed_system<T: Scalar>(im: &Images<T>, dim: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(im.gens.len() * dim, dim);
    for (i, g) in im.gens.iter().enumerate() {
        m.set_block(i * dim, 0, &g.sub(&Matrix::identity(dim)));
    }
    m
}

pub fn fox_matrix(pres: &Presentation, rep: &MatrixRep) -> Result<FoxMatrix, GroupCohError> {
    rep.check(pres)?;
    Ok(match &rep.kind {
        Kind::Exact(im) => FoxMatrix::Exact(fox_blocks(pres, im, rep.dim())),
        Kind::Float(im) => FoxMatrix::Float(to_dmatrix(&fox_blocks(pres, im, rep.dim()))),
    })
}

fn to_dmatrix(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

/// Numerical rank and an orthonormal null-space basis.
pub fn svd_null_space(m: &DMatrix<f64>, threshold: f64) -> (usize, Vec<DVector<f64>>) {
    let cols = m.ncols();
    if cols == 0 {
        return (0, Vec::new());
    }
    // pad to at least square so the SVD returns a full right basis
    let mut padded = DMatrix::zeros(m.nrows().max(cols), cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut rank = 0;
    let mut null = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s > threshold {
            rank += 1;
        } else {
            null.push(v_t.row(i).transpose());
        }
    }
    (rank, null)
}

fn split<T: Clone>(v: &[T], dim: usize) -> Vec<Vec<T>> {
    if dim == 0 {
        return Vec::new();
    }
    v.chunks(dim).map(<[T]>::to_vec).collect()
}

pub fn h1_dimension(pres: &Presentation, rep: &MatrixRep) -> Result<CocycleSpaceReport, GroupCohError> {
    h1_dimension_with_threshold(pres, rep, SVD_RANK_THRESHOLD)
}

/// As [`h1_dimension`], with the singular-value cutoff used for float
/// representations.
pub fn h1_dimension_with_threshold(
    pres: &Presentation,
    rep: &MatrixRep,
    svd_threshold: f64,
) -> Result<CocycleSpaceReport, GroupCohError> {
    let fox = fox_matrix(pres, rep)?;
    let dim = rep.dim();
    let unknowns = pres.generator_count() * dim;
    let (method, z1_dim, fixed_dim, cocycle_basis) = match (&fox, &rep.kind) {
        (FoxMatrix::Exact(f), Kind::Exact(im)) => {
            let kernel = if f.rows() == 0 {
                Matrix::<Rational>::identity(unknowns).data().chunks(unknowns.max(1)).map(<[_]>::to_vec).collect()
            } else {
                f.kernel()
            };
            let fixed_dim = dim - fixed_system(im, dim).rank();
            let basis = kernel.iter().map(|v| split(v, dim)).collect::<Vec<_>>();
            (RankMethod::Exact, kernel.len(), fixed_dim, CocycleBasis::Exact(basis))
        }
        (FoxMatrix::Float(f), Kind::Float(im)) => {
            let (_, null) = svd_null_space(f, svd_threshold);
            let (fixed_rank, _) = svd_null_space(&to_dmatrix(&fixed_system(im, dim)), svd_threshold);
            let basis = null
                .iter()
                .map(|v| split(v.as_slice(), dim))
                .collect::<Vec<_>>();
            (RankMethod::Svd, null.len(), dim - fixed_rank, CocycleBasis::Float(basis))
        }
        _ => unreachable!("fox matrix follows the representation kind"),
    };
    let b1_dim = dim - fixed_dim;
    if b1_dim > z1_dim {
        return Err(GroupCohError::Verification(format!(
            "coboundary dimension {b1_dim} exceeds cocycle dimension {z1_dim}"
        )));
    }
    Ok(CocycleSpaceReport {
        method,
        generator_count: pres.generator_count(),
        relator_count: pres.relators().len(),
        rep_dim: dim,
        z1_dim,
        b1_dim,
        h1_dim: z1_dim - b1_dim,
        fixed_dim,
        max_relator_residual: rep.max_relator_residual(),
        cocycle_basis,
    })
}
