//! Chevalley–Eilenberg cochains with trivial coefficients.
//!
//! `C^k` has basis `e^S` for `k`-subsets `S` of the basis in lexicographic
//! order, and
//! `(d w)(x_0..x_k) = sum_{p<q} (-1)^{p+q} w([x_p, x_q], x_0..^p..^q..x_k)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::exactnum::serial::format_rational;
use crate::exactnum::sparse::{sparse_row, SparseEchelon, SparseRow};
use crate::exactnum::{Field, Matrix, Rational, Scalar};

use super::algebra::LieAlgebra;
use super::structure::derived_subalgebra;
use super::LieError;

pub const DEFAULT_CE_BUDGET: usize = 5000;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Matrix of `d: C^k -> C^{k+1}` stored as sparse rows indexed by
/// `(k+1)`-subsets.
#[derive(Clone, Debug)]
pub struct CEComplexSlice {
    pub degree: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rows: Vec<SparseRow<Rational>>,
}

impl CEComplexSlice {
    pub fn to_matrix(&self) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.codomain_dim, self.domain_dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new(self.domain_dim);
        for row in &self.rows {
            e.insert(row.clone());
        }
        e.rank()
    }

    /// `self . next` (apply `self` first) vanishes.
    pub fn composes_to_zero(&self, next: &CEComplexSlice) -> bool {
        assert_eq!(self.codomain_dim, next.domain_dim);
        for row in &next.rows {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (mid, a) in row {
                for (c, b) in &self.rows[*mid] {
                    let e = acc.entry(*c).or_insert_with(Rational::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }
}

fn check_budget(n: usize, k: usize, budget: usize) -> Result<(), LieError> {
    let size = binomial(n, k);
    if size > budget {
        return Err(LieError::BudgetExceeded {
            degree: k,
            size,
            budget,
        });
    }
    Ok(())
}

pub fn ce_differential(g: &LieAlgebra, k: usize, budget: usize) -> Result<CEComplexSlice, LieError> {
    let n = g.dim();
    check_budget(n, k, budget)?;
    check_budget(n, k + 1, budget)?;
    let domain = subsets(n, k);
    let index: HashMap<&[usize], usize> = domain.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let codomain = subsets(n, k + 1);
    let rows = codomain
        .iter()
        .map(|t| {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for p in 0..t.len() {
                for q in (p + 1)..t.len() {
                    let rest: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != p && i != q)
                        .map(|(_, &x)| x)
                        .collect();
                    let base_sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                    for (m, c) in g.basis_bracket(t[p], t[q]).iter().enumerate() {
                        if c.is_zero() || rest.contains(&m) {
                            continue;
                        }
                        let before = rest.iter().filter(|&&r| r < m).count();
                        let sign = if before % 2 == 0 { base_sign } else { -base_sign };
                        let mut s = rest.clone();
                        s.insert(before, m);
                        let col = index[s.as_slice()];
                        let e = acc.entry(col).or_insert_with(Rational::zero);
                        *e = e.clone() + Rational::from_i64(sign) * c.clone();
                    }
                }
            }
            let mut row: SparseRow<Rational> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();
    Ok(CEComplexSlice {
        degree: k,
        domain_dim: domain.len(),
        codomain_dim: codomain.len(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dimension: usize,
    /// Cocycles whose classes form a basis, as coefficients on the
    /// lexicographically ordered `k`-subsets.
    #[serde(serialize_with = "serialize_vectors")]
    pub representatives: Vec<Vec<Rational>>,
}

fn serialize_vectors<S: serde::Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = v
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    text.serialize(s)
}

pub fn ce_cohomology(g: &LieAlgebra, k: usize, budget: usize) -> Result<CohomologyReport, LieError> {
    let n = g.dim();
    if k > n {
        return Err(LieError::DegreeOutOfRange { degree: k, dim: n });
    }
    check_budget(n, k, budget)?;
    let dk = ce_differential(g, k, budget)?;
    let mut kernel_ech = SparseEchelon::new(dk.domain_dim);
    for row in &dk.rows {
        kernel_ech.insert(row.clone());
    }
    let cocycles = kernel_ech.null_space();
    let mut image = SparseEchelon::new(dk.domain_dim);
    if k > 0 {
        let prev = ce_differential(g, k - 1, budget)?;
        // image of d_{k-1} is spanned by its columns
        let mut cols: Vec<SparseRow<Rational>> = vec![Vec::new(); prev.domain_dim];
        for (r, row) in prev.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        for col in cols {
            image.insert(col);
        }
    }
    let boundary_rank = image.rank();
    let mut representatives = Vec::new();
    for z in cocycles.iter() {
        if image.insert(sparse_row(z)) {
            representatives.push(z.clone());
        }
    }
    let dimension = cocycles.len() - boundary_rank;
    if representatives.len() != dimension {
        return Err(LieError::Verification(format!(
            "found {} representatives for a {}-dimensional H^{}",
            representatives.len(),
            dimension,
            k
        )));
    }
    if k == 1 {
        let expected = n - derived_subalgebra(g).dim();
        if dimension != expected {
            return Err(LieError::Verification(format!(
                "dim H^1 = {dimension} but dim g - dim [g,g] = {expected}"
            )));
        }
    }
    Ok(CohomologyReport {
        degree: k,
        dimension,
        representatives,
    })
}
