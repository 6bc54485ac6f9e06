//! Incremental sparse row reduction, used for the large and very sparse
//! differentials of exterior complexes.

use std::collections::BTreeMap;

use super::scalar::Field;

pub type SparseRow<F> = Vec<(usize, F)>;

/// Row space of a sparse matrix kept in echelon form keyed by leading
/// column. Rows are inserted one at a time and reduced against existing
/// pivots.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce `row` against the current pivots and keep it if it is
    /// independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let factor = row[0].1.clone();
                    row = axpy(&row, &factor, p);
                }
                None => {
                    let inv = row[0].1.inv().expect("leading entry is nonzero");
                    for (_, v) in row.iter_mut() {
                        *v = v.clone() * inv.clone();
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Basis of `{x : r . x = 0 for every stored row r}`.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let reduced = self.fully_reduced();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !reduced.contains_key(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (&lead, row) in &reduced {
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[lead] = -row[k].1.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced echelon form: every pivot column is zero outside its row.
    fn fully_reduced(&self) -> BTreeMap<usize, SparseRow<F>> {
        let mut out: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        // process from the last pivot backwards so later rows are final
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let c = r[k].0;
                if let Some(p) = out.get(&c) {
                    let factor = r[k].1.clone();
                    r = axpy(&r, &factor, p);
                    // r[k] was eliminated; entries before k are unchanged
                } else {
                    k += 1;
                }
            }
            out.insert(lead, r);
        }
        out
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: SparseRow<F>) -> bool {
        let mut probe = self.clone();
        !probe.insert(row)
    }
}

/// `x - factor * p` on sorted sparse rows.
fn axpy<F: Field>(x: &[(usize, F)], factor: &F, p: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(x.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < p.len() {
        let take_x = j >= p.len() || (i < x.len() && x[i].0 < p[j].0);
        let take_p = i >= x.len() || (j < p.len() && p[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(factor.clone() * p[j].1.clone())));
            j += 1;
        } else {
            let v = x[i].1.clone() - factor.clone() * p[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Convert a dense row to sparse form.
pub fn sparse_row<F: Field>(dense: &[F]) -> SparseRow<F> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Matrix, Rational};

    #[test]
    fn matches_dense_kernel_dimension() {
        let rows = vec![
            vec![int(1), int(2), int(0), int(-1)],
            vec![int(2), int(4), int(1), int(0)],
            vec![int(3), int(6), int(1), int(-1)],
        ];
        let mut e = SparseEchelon::<Rational>::new(4);
        for r in &rows {
            e.insert(sparse_row(r));
        }
        let dense = Matrix::from_rows(rows);
        assert_eq!(e.rank(), dense.rank());
        let ns = e.null_space();
        assert_eq!(ns.len(), 4 - e.rank());
        for v in &ns {
            assert!(dense.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }
}
