//! Splitting a semisimple algebra into minimal ideals with rational
//! arithmetic only.
//!
//! An ideal is first split along ideals generated by single seed vectors
//! (basis vectors, then sums and differences of pairs) and their
//! Killing-orthogonal complements. Ideals that resist seeding are examined
//! through their centroid, the commutant of the adjoint action: a centroid
//! of dimension one certifies absolute simplicity, and an element of the
//! centroid with a rational eigenvalue splits the ideal along its
//! eigenspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::exactnum::sparse::{SparseEchelon, SparseRow};
use crate::exactnum::{Field, Matrix, Rational, Scalar};

use super::algebra::{combine, LieAlgebra};
use super::structure::{ideal_closure, is_ideal, is_negative_definite, killing_form, subalgebra_closure};
use super::subspace::Subspace;
use super::LieError;

/// Largest constant or leading coefficient whose divisors are enumerated
/// when looking for rational eigenvalues.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealLabel {
    pub dim: usize,
    pub compact_type: bool,
    pub is_so3: bool,
    /// Centroid is `Q`; false means the ideal does not split over `Q` but
    /// may still split over `R`.
    pub absolutely_simple: bool,
}

#[derive(Clone, Debug)]
pub struct IdealDecomposition {
    pub ideals: Vec<Subspace>,
    pub labels: Vec<IdealLabel>,
}

impl IdealDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.dim).collect()
    }

    pub fn has_so3_factor(&self) -> bool {
        self.labels.iter().any(|l| l.is_so3)
    }
}

pub fn simple_decomposition(g: &LieAlgebra) -> Result<IdealDecomposition, LieError> {
    let kappa = killing_form(g);
    let n = g.dim();
    if n == 0 || kappa.determinant().expect("square").is_zero() {
        return Err(LieError::NotSemisimple);
    }
    let mut pending = vec![Subspace::full(n)];
    let mut done: Vec<(Subspace, bool)> = Vec::new();
    while let Some(ideal) = pending.pop() {
        match split_once(g, &kappa, &ideal) {
            Split::Parts(a, b) => {
                pending.push(b);
                pending.push(a);
            }
            Split::Simple { absolute } => done.push((ideal, absolute)),
        }
    }
    // deterministic order: by smallest pivot
    done.sort_by_key(|(s, _)| s.pivots().first().copied());
    let ideals: Vec<Subspace> = done.iter().map(|(s, _)| s.clone()).collect();
    let labels = done
        .iter()
        .map(|(s, absolute)| {
            let kr = restricted_form(&kappa, s);
            let compact = is_negative_definite(&kr);
            IdealLabel {
                dim: s.dim(),
                compact_type: compact,
                is_so3: compact && s.dim() == 3,
                absolutely_simple: *absolute,
            }
        })
        .collect();
    let out = IdealDecomposition { ideals, labels };
    verify(g, &kappa, &out)?;
    Ok(out)
}

/// True iff some simple ideal is compact of dimension 3, i.e. isomorphic
/// to `so(3)`.
pub fn detect_so3_factor(g: &LieAlgebra) -> Result<bool, LieError> {
    Ok(simple_decomposition(g)?.has_so3_factor())
}

enum Split {
    Parts(Subspace, Subspace),
    Simple { absolute: bool },
}

fn split_once(g: &LieAlgebra, kappa: &Matrix<Rational>, ideal: &Subspace) -> Split {
    if ideal.dim() <= 1 {
        return Split::Simple { absolute: true };
    }
    if let Some(j) = seeded_subideal(g, ideal) {
        return complement_split(kappa, ideal, j);
    }
    let centroid = centroid(g, ideal);
    if centroid.len() == 1 {
        return Split::Simple { absolute: true };
    }
    for t in &centroid {
        if let Some(j) = eigen_subideal(ideal, t) {
            return complement_split(kappa, ideal, j);
        }
    }
    Split::Simple { absolute: false }
}

fn complement_split(kappa: &Matrix<Rational>, ideal: &Subspace, j: Subspace) -> Split {
    let k = j.orthogonal_complement(kappa).intersection(ideal);
    debug_assert_eq!(j.dim() + k.dim(), ideal.dim());
    Split::Parts(j, k)
}

fn seeded_subideal(g: &LieAlgebra, ideal: &Subspace) -> Option<Subspace> {
    let b = ideal.basis();
    let proper = |s: &Subspace| s.dim() > 0 && s.dim() < ideal.dim();
    for v in b {
        let j = ideal_closure(g, std::slice::from_ref(v));
        if proper(&j) {
            return Some(j);
        }
    }
    let n = g.dim();
    for x in 0..b.len() {
        for y in (x + 1)..b.len() {
            for sign in [1i64, -1] {
                let s = Rational::from_i64(sign);
                let v: Vec<Rational> = (0..n).map(|k| b[x][k].clone() + s.clone() * b[y][k].clone()).collect();
                let j = ideal_closure(g, &[v]);
                if proper(&j) {
                    return Some(j);
                }
            }
        }
    }
    None
}

/// `ad(x)` restricted to the ideal, in echelon coordinates.
fn restricted_ad(g: &LieAlgebra, ideal: &Subspace, x: &[Rational]) -> Matrix<Rational> {
    let m = ideal.dim();
    let cols: Vec<Vec<Rational>> = ideal
        .basis()
        .iter()
        .map(|b| {
            ideal
                .coordinates(&g.bracket(x, b))
                .expect("ideal is bracket-closed")
        })
        .collect();
    Matrix::from_columns(m, &cols)
}

/// Basis of the commutant of `ad(ideal)` acting on the ideal, as `m x m`
/// matrices. It suffices to commute with a generating set.
fn centroid(g: &LieAlgebra, ideal: &Subspace) -> Vec<Matrix<Rational>> {
    let m = ideal.dim();
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    let mut generated = Subspace::zero(g.dim());
    for b in ideal.basis() {
        if generated.dim() == m {
            break;
        }
        if !generated.contains(b) {
            gens.push(b.clone());
            generated = subalgebra_closure(g, &gens);
        }
    }
    let mut ech = SparseEchelon::<Rational>::new(m * m);
    for x in &gens {
        let a = restricted_ad(g, ideal, x);
        // (T A - A T)_{rc} = sum_l T_{rl} A_{lc} - A_{rl} T_{lc}
        for r in 0..m {
            for c in 0..m {
                let mut row: SparseRow<Rational> = Vec::new();
                for l in 0..m {
                    let alc = &a[(l, c)];
                    if !alc.is_zero() {
                        row.push((r * m + l, alc.clone()));
                    }
                    let arl = &a[(r, l)];
                    if !arl.is_zero() {
                        row.push((l * m + c, -arl.clone()));
                    }
                }
                merge_duplicates(&mut row);
                ech.insert(row);
            }
        }
    }
    ech.null_space()
        .into_iter()
        .map(|v| Matrix::new(m, m, v))
        .collect()
}

fn merge_duplicates(row: &mut SparseRow<Rational>) {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<Rational> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *row = out;
}

/// `ker(T - lambda)` mapped back to the ambient space, for a rational
/// eigenvalue `lambda` of a non-scalar centroid element.
fn eigen_subideal(ideal: &Subspace, t: &Matrix<Rational>) -> Option<Subspace> {
    let m = t.rows();
    let poly = minimal_polynomial(t);
    if poly.len() <= 2 {
        // scalar
        return None;
    }
    for lambda in rational_roots(&poly)? {
        let shifted = t.sub(&Matrix::identity(m).scale(&lambda));
        let kernel = shifted.kernel();
        if kernel.is_empty() || kernel.len() == m {
            continue;
        }
        let vecs: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|k| combine(ideal.basis(), k, ideal.ambient_dim()))
            .collect();
        return Some(Subspace::span(ideal.ambient_dim(), &vecs));
    }
    None
}

/// Monic minimal polynomial, coefficients from the constant term up.
pub(crate) fn minimal_polynomial(t: &Matrix<Rational>) -> Vec<Rational> {
    let m = t.rows();
    let mut powers: Vec<Vec<Rational>> = vec![Matrix::<Rational>::identity(m).data().to_vec()];
    let mut current = Matrix::<Rational>::identity(m);
    loop {
        current = current.matmul(t);
        let v = current.data().to_vec();
        let a = Matrix::from_columns(m * m, &powers);
        if let Some(coeffs) = a.solve(&v) {
            let mut poly: Vec<Rational> = coeffs.into_iter().map(|c| -c).collect();
            poly.push(Rational::one());
            return poly;
        }
        powers.push(v);
    }
}

/// Rational roots of a polynomial, or `None` if the coefficients are too
/// large for divisor enumeration.
pub(crate) fn rational_roots(poly: &[Rational]) -> Option<Vec<Rational>> {
    // clear denominators
    let lcm = poly
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    // strip zero roots
    let lead_zero = ints.iter().take_while(|c| num_traits::Zero::is_zero(*c)).count();
    if lead_zero > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[lead_zero..];
    if ints.len() <= 1 {
        return Some(roots);
    }
    let a0 = ints[0].abs().to_u64().filter(|v| *v <= DIVISOR_SEARCH_LIMIT)?;
    let an = ints[ints.len() - 1]
        .abs()
        .to_u64()
        .filter(|v| *v <= DIVISOR_SEARCH_LIMIT)?;
    let ps = divisors(a0);
    let qs = divisors(an);
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1i64, -1] {
                let r = Rational::new(BigInt::from(*p as i64 * s), BigInt::from(*q as i64));
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    for r in candidates {
        let value = poly
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r.clone() + c.clone());
        if value.is_zero() {
            roots.push(r);
        }
    }
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn restricted_form(kappa: &Matrix<Rational>, s: &Subspace) -> Matrix<Rational> {
    let b = s.basis();
    Matrix::from_fn(b.len(), b.len(), |x, y| bilinear(kappa, &b[x], &b[y]))
}

fn bilinear(kappa: &Matrix<Rational>, x: &[Rational], y: &[Rational]) -> Rational {
    let ky = kappa.mul_vec(y);
    x.iter()
        .zip(&ky)
        .fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn verify(g: &LieAlgebra, kappa: &Matrix<Rational>, d: &IdealDecomposition) -> Result<(), LieError> {
    let total: usize = d.ideals.iter().map(Subspace::dim).sum();
    if total != g.dim() {
        return Err(LieError::Verification(format!(
            "ideal dimensions sum to {total}, expected {}",
            g.dim()
        )));
    }
    for (a, ia) in d.ideals.iter().enumerate() {
        if !is_ideal(g, ia) {
            return Err(LieError::Verification(format!("component {a} is not an ideal")));
        }
        // minimality: every basis vector regenerates the whole component
        if d.labels[a].absolutely_simple {
            for v in ia.basis() {
                if ideal_closure(g, std::slice::from_ref(v)).dim() != ia.dim() {
                    return Err(LieError::Verification(format!("component {a} has a proper sub-ideal")));
                }
            }
        }
        for ib in &d.ideals[a + 1..] {
            for x in ia.basis() {
                for y in ib.basis() {
                    if !bilinear(kappa, x, y).is_zero() {
                        return Err(LieError::Verification(
                            "components are not Killing-orthogonal".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}
