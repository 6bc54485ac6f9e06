//! Integral rotations of a coordinate plane of a form over `Q(sqrt 2)`.
//!
//! In the plane `(i, j)` with diagonal coefficients `a = a_ii`, `b = a_jj`
//! and `r = b / a`, the blocks `[[alpha, beta], [gamma, delta]]` preserving
//! `a x^2 + b y^2` with determinant one are exactly
//! `alpha^2 + r gamma^2 = 1`, `beta = -r gamma`, `delta = alpha`. Only the
//! first column is enumerated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::exactnum::{Field, Matrix, NumberField, QuadElement, Rational, Scalar};

use super::form::QuadraticForm;
use super::member::{is_member, OrthogonalElement};
use super::QFormError;

/// `r = (p + q sqrt2) / d` with integer parts.
struct IntRatio {
    p: i128,
    q: i128,
    d: i128,
}

impl IntRatio {
    fn from_quad(r: &QuadElement) -> Option<Self> {
        let d = r.a.denom().lcm(r.b.denom());
        let scale = |x: &Rational| -> Option<i128> {
            (x * Rational::from_integer(d.clone())).to_integer().to_i128()
        };
        let p = scale(&r.a)?;
        let q = scale(&r.b)?;
        let d = d.to_i128()?;
        // keeps every product below in range for heights up to 10^6
        let bound = 1i128 << 40;
        (p.abs() < bound && q.abs() < bound && d < bound).then_some(IntRatio { p, q, d })
    }
}

fn quad(a: i64, b: i64) -> QuadElement {
    QuadElement::from_ints(a, b)
}

/// Entries of height at most `height` only. Hits are certified and sorted
/// by matrix height, then lexicographically by coefficients.
pub fn plane_rotation_search(
    phi: &QuadraticForm<QuadElement>,
    i: usize,
    j: usize,
    height: u32,
) -> Result<Vec<OrthogonalElement<QuadElement>>, QFormError> {
    let n = phi.n();
    if i == j || i >= n || j >= n {
        return Err(QFormError::InvalidPlane { i, j, n });
    }
    let a = &phi.matrix()[(i, i)];
    let b = &phi.matrix()[(j, j)];
    let Some(ainv) = a.inv() else {
        return Ok(Vec::new());
    };
    let r = b.clone() * ainv;
    let h = i64::from(height);
    let Some(ratio) = IntRatio::from_quad(&r) else {
        return Err(QFormError::CoefficientsTooLarge);
    };
    if h > 1_000_000 {
        return Err(QFormError::CoefficientsTooLarge);
    }
    let mut hits: Vec<(i64, i64, i64, i64)> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|a1| {
            let ratio = &ratio;
            let mut local = Vec::new();
            for b1 in -h..=h {
                // alpha^2 = x0 + x1 sqrt2
                let x0 = i128::from(a1 * a1 + 2 * b1 * b1);
                let x1 = i128::from(2 * a1 * b1);
                for a2 in -h..=h {
                    for b2 in -h..=h {
                        let g0 = i128::from(a2 * a2 + 2 * b2 * b2);
                        let g1 = i128::from(2 * a2 * b2);
                        let rational = ratio.d * x0 + ratio.p * g0 + 2 * ratio.q * g1;
                        let irrational = ratio.d * x1 + ratio.p * g1 + ratio.q * g0;
                        if rational == ratio.d && irrational == 0 {
                            local.push((a1, b1, a2, b2));
                        }
                    }
                }
            }
            local
        })
        .collect();
    hits.sort_unstable();
    let mut out = Vec::new();
    for (a1, b1, a2, b2) in hits {
        let alpha = quad(a1, b1);
        let gamma = quad(a2, b2);
        let beta = -(r.clone() * gamma.clone());
        if !beta.is_integral() || beta.height() > Rational::from_i64(h) {
            continue;
        }
        let mut m = Matrix::<QuadElement>::identity(n);
        m[(i, i)] = alpha.clone();
        m[(i, j)] = beta;
        m[(j, i)] = gamma;
        m[(j, j)] = alpha;
        if let Ok(e) = is_member(&m, phi) {
            out.push(e.with_word(format!("rot({i},{j};{a1}{b1:+}r2,{a2}{b2:+}r2)")));
        }
    }
    sort_by_height(&mut out);
    Ok(out)
}

/// Smallest-box search for a nontrivial zero of the form: every coordinate
/// has integer coefficients in `[-bound, bound]` on the power basis.
/// The first hit in enumeration order is returned.
pub fn isotropic_witness<K: NumberField>(phi: &QuadraticForm<K>, bound: i64) -> Option<Vec<K>> {
    let degree = K::zero().coefficients().len();
    let mut scalars: Vec<K> = Vec::new();
    let side = (2 * bound + 1) as usize;
    for code in 0..side.pow(degree as u32) {
        let mut c = code;
        let coeffs: Vec<Rational> = (0..degree)
            .map(|_| {
                let digit = (c % side) as i64 - bound;
                c /= side;
                Rational::from_i64(digit)
            })
            .collect();
        scalars.push(K::from_coefficients(&coeffs).expect("arity matches the field degree"));
    }
    let n = phi.n();
    let total = scalars.len().checked_pow(n as u32)?;
    (1..total).into_par_iter().find_first(|&code| {
        let mut c = code;
        let v: Vec<K> = (0..n)
            .map(|_| {
                let s = scalars[c % scalars.len()].clone();
                c /= scalars.len();
                s
            })
            .collect();
        v.iter().any(|x| !x.is_zero()) && phi.evaluate(&v).is_zero()
    })
    .map(|mut code| {
        (0..n)
            .map(|_| {
                let s = scalars[code % scalars.len()].clone();
                code /= scalars.len();
                s
            })
            .collect()
    })
}

/// Largest coefficient of any entry.
pub fn matrix_height(m: &Matrix<QuadElement>) -> Rational {
    m.data()
        .iter()
        .map(QuadElement::height)
        .max()
        .unwrap_or_else(Rational::zero)
}

fn sort_key(m: &Matrix<QuadElement>) -> (Rational, Vec<BigInt>) {
    let coeffs = m
        .data()
        .iter()
        .flat_map(|x| [x.a.to_integer(), x.b.to_integer()])
        .collect();
    (matrix_height(m), coeffs)
}

pub fn sort_by_height(elems: &mut [OrthogonalElement<QuadElement>]) {
    elems.sort_by_cached_key(|e| sort_key(e.matrix()));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> QuadraticForm<QuadElement> {
        QuadraticForm::diagonal(&[quad(1, 0), quad(1, 0), quad(1, 0), quad(0, -1), quad(0, -1)]).unwrap()
    }

    #[test]
    fn equal_plane_contains_quarter_turn() {
        let hits = plane_rotation_search(&phi(), 0, 1, 1).unwrap();
        let found = hits.iter().any(|e| {
            let m = e.matrix();
            m[(0, 0)] == quad(0, 0) && m[(0, 1)] == quad(-1, 0) && m[(1, 0)] == quad(1, 0)
        });
        assert!(found);
        let hits = plane_rotation_search(&phi(), 3, 4, 1).unwrap();
        assert!(hits.iter().any(|e| e.matrix()[(3, 4)] == quad(-1, 0)));
    }

    #[test]
    fn mixed_plane_finds_relative_pell_solutions() {
        // alpha^2 - sqrt2 gamma^2 = 1
        let hits = plane_rotation_search(&phi(), 0, 3, 10).unwrap();
        let nontrivial: Vec<_> = hits
            .iter()
            .filter(|e| !e.matrix()[(3, 0)].is_zero())
            .collect();
        assert!(!nontrivial.is_empty());
        for e in &hits {
            assert!(e.certificate().passed());
        }
        let m = nontrivial[0].matrix();
        let a = m[(0, 0)].clone();
        let g = m[(3, 0)].clone();
        assert_eq!(a.clone() * a - quad(0, 1) * g.clone() * g, quad(1, 0));
    }

    #[test]
    fn rejects_degenerate_plane() {
        assert!(plane_rotation_search(&phi(), 2, 2, 1).is_err());
        assert!(plane_rotation_search(&phi(), 0, 7, 1).is_err());
    }

    #[test]
    fn isotropy_witnesses() {
        assert_eq!(isotropic_witness(&phi(), 1), None);
        let q = |a, b| QuadElement::from_ints(a, b);
        let split = QuadraticForm::diagonal(&[q(1, 0), q(-1, 0), q(1, 0), q(0, -1), q(0, -1)]).unwrap();
        let v = isotropic_witness(&split, 1).unwrap();
        assert!(split.evaluate(&v).is_zero());
        assert!(v.iter().any(|x| !x.is_zero()));
    }
}
