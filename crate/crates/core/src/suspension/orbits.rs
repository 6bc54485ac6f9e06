//! Finite models of suspensions: a group acting by permutations on a finite
//! fibre. Leaves correspond to orbits, and each leaf covers the base with
//! degree equal to the orbit size.

use std::collections::{HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::groupcoh::Presentation;

use super::SuspensionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    generators: Vec<String>,
    images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteActionFile {
    pub generators: Vec<String>,
    pub images: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply q first, then p
    q.iter().map(|&x| p[x]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl FiniteAction {
    pub fn new(generators: Vec<String>, images: Vec<Vec<usize>>) -> Result<Self, SuspensionError> {
        if generators.len() != images.len() {
            return Err(SuspensionError::InvalidAction(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        let m = images.first().map_or(0, Vec::len);
        for (g, p) in generators.iter().zip(&images) {
            if p.len() != m || !is_permutation(p) {
                return Err(SuspensionError::InvalidAction(format!("image of {g} is not a permutation of 0..{m}")));
            }
        }
        Ok(FiniteAction { generators, images })
    }

    /// An action of a finitely presented group; every relator must act trivially.
    pub fn of_presentation(pres: &Presentation, images: Vec<Vec<usize>>) -> Result<Self, SuspensionError> {
        let action = FiniteAction::new(pres.generators().to_vec(), images)?;
        for w in pres.relators() {
            let mut acc: Vec<usize> = (0..action.set_size()).collect();
            for l in w {
                let p = &action.images[l.generator];
                let step = if l.inverse { invert(p) } else { p.clone() };
                acc = compose(&acc, &step);
            }
            if acc.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(SuspensionError::InvalidAction(format!(
                    "relator {} does not act trivially",
                    pres.word_symbols(w).join(" ")
                )));
            }
        }
        Ok(action)
    }

    pub fn from_file(file: &FiniteActionFile) -> Result<Self, SuspensionError> {
        FiniteAction::new(file.generators.clone(), file.images.clone())
    }

    pub fn set_size(&self) -> usize {
        self.images.first().map_or(0, Vec::len)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Order of the permutation group generated, if at most `cap`.
    pub fn group_order(&self, cap: usize) -> Option<usize> {
        let id: Vec<usize> = (0..self.set_size()).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.images {
                // finite group: closure under generators alone is closed under inverses
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(q);
                }
            }
        }
        Some(seen.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub set_size: usize,
    /// Sorted orbits, ordered by smallest element.
    pub orbits: Vec<Vec<usize>>,
    /// Index of the stabilizer of any point of the orbit.
    pub stabilizer_index: Vec<usize>,
    pub compact_leaf: Vec<bool>,
}

pub fn orbits(action: &FiniteAction) -> OrbitReport {
    let m = action.set_size();
    let mut uf = UnionFind::<usize>::new(m);
    for p in &action.images {
        for (x, &y) in p.iter().enumerate() {
            uf.union(x, y);
        }
    }
    let labels = uf.into_labeling();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for x in 0..m {
        let root = labels[x];
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[root]].push(x);
    }
    OrbitReport {
        set_size: m,
        stabilizer_index: orbits.iter().map(Vec::len).collect(),
        compact_leaf: vec![true; orbits.len()],
        orbits,
    }
}
