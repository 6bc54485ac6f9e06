use nalgebra::DMatrix;

use crate::exactnum::{Matrix, Rational, Scalar};

use super::presentation::{Letter, Presentation};
use super::GroupCohError;

/// Largest entrywise deviation of a relator image from the identity that a
/// float representation may have.
pub const FLOAT_RELATOR_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub(crate) struct Images<T> {
    pub gens: Vec<Matrix<T>>,
    pub invs: Vec<Matrix<T>>,
}

#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Exact(Images<Rational>),
    Float(Images<f64>),
}

/// Invertible matrices, one per generator, satisfying every relator.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    dim: usize,
    pub(crate) kind: Kind,
    max_relator_residual: f64,
}

fn check_shapes<T>(pres: &Presentation, mats: &[Matrix<T>]) -> Result<usize, GroupCohError>
where
    T: Scalar,
{
    if mats.len() != pres.generator_count() {
        return Err(GroupCohError::DimensionMismatch {
            expected: pres.generator_count(),
            found: mats.len(),
        });
    }
    let dim = match mats.first() {
        Some(m) => m.rows(),
        None => return Err(GroupCohError::InvalidRepresentation("no generators to fix the dimension".into())),
    };
    for m in mats {
        if m.rows() != dim || m.cols() != dim {
            return Err(GroupCohError::DimensionMismatch {
                expected: dim,
                found: if m.rows() != dim { m.rows() } else { m.cols() },
            });
        }
    }
    Ok(dim)
}

/// Image of a word.
pub fn word_matrix<T: Scalar>(w: &[Letter], gens: &[Matrix<T>], invs: &[Matrix<T>], dim: usize) -> Matrix<T> {
    w.iter().fold(Matrix::identity(dim), |acc, l| acc.matmul(letter(l, gens, invs)))
}

fn letter<'a, T>(l: &Letter, gens: &'a [Matrix<T>], invs: &'a [Matrix<T>]) -> &'a Matrix<T> {
    if l.inverse {
        &invs[l.generator]
    } else {
        &gens[l.generator]
    }
}

/// `psi(w)` for the crossed homomorphism with `psi(g_i) = values[i]`, by the
/// rule `psi(u l) = psi(u) + pi(u) psi(l)` and `psi(g^-1) = -pi(g)^-1 psi(g)`.
pub fn cocycle_value<T: Scalar>(w: &[Letter], gens: &[Matrix<T>], invs: &[Matrix<T>], values: &[Vec<T>]) -> Vec<T> {
    let dim = values.first().map_or(0, Vec::len);
    let mut prefix = Matrix::<T>::identity(dim);
    let mut acc = vec![T::zero(); dim];
    for l in w {
        let step = if l.inverse {
            invs[l.generator]
                .mul_vec(&values[l.generator])
                .into_iter()
                .map(|x| -x)
                .collect()
        } else {
            values[l.generator].clone()
        };
        for (a, s) in acc.iter_mut().zip(prefix.mul_vec(&step)) {
            *a = a.clone() + s;
        }
        prefix = prefix.matmul(letter(l, gens, invs));
    }
    acc
}

fn float_deviation(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[(i, j)] - target).abs());
        }
    }
    worst
}

impl MatrixRep {
    pub fn exact(pres: &Presentation, gens: Vec<Matrix<Rational>>) -> Result<Self, GroupCohError> {
        let dim = check_shapes(pres, &gens)?;
        let invs = gens
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().map_err(|_| GroupCohError::Singular { generator: pres.generators()[i].clone() }))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = MatrixRep {
            dim,
            kind: Kind::Exact(Images { gens, invs }),
            max_relator_residual: 0.0,
        };
        rep.check(pres)?;
        Ok(rep)
    }

    pub fn float(pres: &Presentation, gens: Vec<DMatrix<f64>>) -> Result<Self, GroupCohError> {
        let gens: Vec<Matrix<f64>> = gens
            .iter()
            .map(|g| Matrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)]))
            .collect();
        let dim = check_shapes(pres, &gens)?;
        let mut invs = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let d = DMatrix::from_row_slice(dim, dim, g.data());
            let inv = d
                .try_inverse()
                .filter(|m| m.iter().all(|x| x.is_finite()))
                .ok_or_else(|| GroupCohError::Singular { generator: pres.generators()[i].clone() })?;
            invs.push(Matrix::from_fn(dim, dim, |r, c| inv[(r, c)]));
        }
        let mut rep = MatrixRep {
            dim,
            kind: Kind::Float(Images { gens, invs }),
            max_relator_residual: 0.0,
        };
        rep.max_relator_residual = rep.check(pres)?;
        Ok(rep)
    }

    /// The trivial representation on `R^dim`.
    pub fn trivial(pres: &Presentation, dim: usize) -> Self {
        let gens = vec![Matrix::identity(dim); pres.generator_count()];
        MatrixRep {
            dim,
            kind: Kind::Exact(Images {
                invs: gens.clone(),
                gens,
            }),
            max_relator_residual: 0.0,
        }
    }

    /// Verify every relator maps to the identity; returns the largest float
    /// residual (zero for exact representations).
    pub fn check(&self, pres: &Presentation) -> Result<f64, GroupCohError> {
        if pres.generator_count() != self.generator_count() {
            return Err(GroupCohError::DimensionMismatch {
                expected: pres.generator_count(),
                found: self.generator_count(),
            });
        }
        let mut worst = 0.0f64;
        for (r, w) in pres.relators().iter().enumerate() {
            match &self.kind {
                Kind::Exact(im) => {
                    if word_matrix(w, &im.gens, &im.invs, self.dim) != Matrix::identity(self.dim) {
                        return Err(GroupCohError::InvalidRepresentation(format!(
                            "relator {} is not sent to the identity",
                            pres.word_symbols(w).join(" ")
                        )));
                    }
                }
                Kind::Float(im) => {
                    let dev = float_deviation(&word_matrix(w, &im.gens, &im.invs, self.dim));
                    if !(dev <= FLOAT_RELATOR_TOL) {
                        return Err(GroupCohError::InvalidRepresentation(format!(
                            "relator {r} has residual {dev:e}, tolerance {FLOAT_RELATOR_TOL:e}"
                        )));
                    }
                    worst = worst.max(dev);
                }
            }
        }
        Ok(worst)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        match &self.kind {
            Kind::Exact(im) => im.gens.len(),
            Kind::Float(im) => im.gens.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Exact(_))
    }

    pub fn max_relator_residual(&self) -> f64 {
        self.max_relator_residual
    }

    /// Generators and inverses, when the representation is rational.
    pub fn exact_images(&self) -> Option<(&[Matrix<Rational>], &[Matrix<Rational>])> {
        match &self.kind {
            Kind::Exact(im) => Some((&im.gens, &im.invs)),
            Kind::Float(_) => None,
        }
    }

    pub fn float_images(&self) -> (Vec<Matrix<f64>>, Vec<Matrix<f64>>) {
        match &self.kind {
            Kind::Exact(im) => (
                im.gens.iter().map(to_float).collect(),
                im.invs.iter().map(to_float).collect(),
            ),
            Kind::Float(im) => (im.gens.clone(), im.invs.clone()),
        }
    }
}

fn to_float(m: &Matrix<Rational>) -> Matrix<f64> {
    use num_traits::ToPrimitive;
    m.map(|x| x.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn quarter_turn() -> Matrix<Rational> {
        Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]])
    }

    #[test]
    fn relators_must_hold() {
        let z4 = Presentation::from_symbols(&["a"], &[&["a", "a", "a", "a"]]).unwrap();
        assert!(MatrixRep::exact(&z4, vec![quarter_turn()]).is_ok());
        let z2 = Presentation::from_symbols(&["a"], &[&["a", "a"]]).unwrap();
        assert!(matches!(
            MatrixRep::exact(&z2, vec![quarter_turn()]),
            Err(GroupCohError::InvalidRepresentation(_))
        ));
        let singular = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert!(matches!(
            MatrixRep::exact(&Presentation::free(&["a"]), vec![singular]),
            Err(GroupCohError::Singular { .. })
        ));
    }

    #[test]
    fn cocycle_of_inverse_letter() {
        let pres = Presentation::free(&["a"]);
        let rep = MatrixRep::exact(&pres, vec![quarter_turn()]).unwrap();
        let (g, i) = rep.exact_images().unwrap();
        let v = vec![vec![int(1), int(0)]];
        // psi(a a^-1) = psi(a) + pi(a) psi(a^-1) = 0
        let w = [Letter::gen(0), Letter::inv(0)];
        assert_eq!(cocycle_value(&w, g, i, &v), vec![int(0), int(0)]);
    }
}
