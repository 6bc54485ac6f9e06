use std::collections::HashMap;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::exactnum::{Matrix, Rational};

use super::DynError;

pub const DEFAULT_DEDUP_TOL: f64 = 1e-9;
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Generator matrices in `SO(n)`, optionally with exact rational entries.
#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub float: Vec<DMatrix<f64>>,
    pub exact: Option<Vec<Matrix<Rational>>>,
}

impl GeneratorImages {
    pub fn from_float(float: Vec<DMatrix<f64>>) -> Self {
        GeneratorImages { float, exact: None }
    }

    pub fn from_rational(exact: Vec<Matrix<Rational>>) -> Self {
        let float = exact.iter().map(rational_to_float).collect();
        GeneratorImages {
            float,
            exact: Some(exact),
        }
    }

    pub fn dim(&self) -> usize {
        self.float.first().map_or(0, |g| g.nrows())
    }

    pub fn check_orthogonal(&self) -> Result<(), DynError> {
        for (index, g) in self.float.iter().enumerate() {
            let residual = orthogonality_residual(g);
            if residual > ORTHOGONALITY_TOL {
                return Err(DynError::NotOrthogonal { index, residual });
            }
        }
        Ok(())
    }

    /// Generators followed by their inverses: letter `2i` is generator `i`,
    /// letter `2i + 1` its inverse.
    pub fn letters(&self) -> Vec<DMatrix<f64>> {
        self.float
            .iter()
            .flat_map(|g| [g.clone(), g.transpose()])
            .collect()
    }

    /// Exact letters, when the generators are rational.
    pub fn exact_letters(&self) -> Option<Vec<Matrix<Rational>>> {
        self.exact
            .as_ref()
            .map(|ex| ex.iter().flat_map(|g| [g.clone(), g.transpose()]).collect())
    }
}

pub fn rational_to_float(m: &Matrix<Rational>) -> DMatrix<f64> {
    use num_traits::ToPrimitive;
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap_or(f64::NAN))
}

pub fn orthogonality_residual(g: &DMatrix<f64>) -> f64 {
    let n = g.nrows();
    (g.transpose() * g - DMatrix::identity(n, n)).amax()
}

pub fn letter_name(letter: u8) -> String {
    let gen = (letter / 2) as usize;
    let inverse = letter % 2 == 1;
    if gen < 26 {
        let c = (b'a' + gen as u8) as char;
        if inverse {
            c.to_ascii_uppercase().to_string()
        } else {
            c.to_string()
        }
    } else if inverse {
        format!("X{gen}.")
    } else {
        format!("x{gen}.")
    }
}

/// Lowercase letters are generators, uppercase their inverses; the empty
/// word is written `e`.
pub fn word_string(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|&l| letter_name(l)).collect()
}

#[derive(Clone, Debug)]
pub struct BallElement {
    pub word: Vec<u8>,
    pub matrix: DMatrix<f64>,
}

/// Deduplicated elements of word length at most `radius`, in breadth-first
/// order: by word length, then lexicographically by word.
#[derive(Clone, Debug)]
pub struct WordBall {
    pub n: usize,
    pub generator_count: usize,
    pub radius: usize,
    pub dedup_tol: f64,
    pub elements: Vec<BallElement>,
    /// `layer_ends[r]` is the number of elements of word length `<= r`.
    pub layer_ends: Vec<usize>,
}

impl WordBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements of word length `<= r`.
    pub fn up_to(&self, r: usize) -> &[BallElement] {
        let r = r.min(self.radius);
        &self.elements[..self.layer_ends[r]]
    }

    /// The ball stopped growing before its radius, so it is the whole
    /// (finite) generated group.
    pub fn is_finite_group(&self) -> bool {
        self.layer_ends.windows(2).any(|w| w[0] == w[1])
    }

    pub fn matrices(&self) -> Vec<DMatrix<f64>> {
        self.elements.iter().map(|e| e.matrix.clone()).collect()
    }
}

/// Spatial hash on three fixed unit-norm linear functionals of the matrix
/// entries. Matrices within Frobenius distance `tol` land in neighbouring
/// cells of side `tol`.
struct SpatialIndex {
    tol: f64,
    weights: [Vec<f64>; 3],
    cells: HashMap<[i64; 3], Vec<usize>>,
}

impl SpatialIndex {
    fn new(len: usize, tol: f64) -> Self {
        let make = |salt: f64| {
            let w: Vec<f64> = (0..len)
                .map(|k| ((k as f64 + 1.0) * salt).sin())
                .collect();
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            w.into_iter().map(|x| x / norm).collect()
        };
        SpatialIndex {
            tol,
            weights: [make(1.618_033_988_7), make(2.718_281_828_4), make(3.141_592_653_5)],
            cells: HashMap::new(),
        }
    }

    fn key(&self, m: &DMatrix<f64>) -> [i64; 3] {
        let mut key = [0i64; 3];
        for (slot, w) in key.iter_mut().zip(&self.weights) {
            let proj: f64 = m.iter().zip(w).map(|(a, b)| a * b).sum();
            *slot = (proj / self.tol).floor() as i64;
        }
        key
    }

    fn find(&self, m: &DMatrix<f64>, elements: &[BallElement]) -> bool {
        let k = self.key(m);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.cells.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) {
                        if ids.iter().any(|&i| (&elements[i].matrix - m).norm() < self.tol) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn insert(&mut self, m: &DMatrix<f64>, id: usize) {
        let k = self.key(m);
        self.cells.entry(k).or_default().push(id);
    }
}

pub fn enumerate_ball(
    gens: &GeneratorImages,
    radius: usize,
    dedup_tol: f64,
    element_cap: usize,
) -> Result<WordBall, DynError> {
    gens.check_orthogonal()?;
    let n = gens.dim();
    if n == 0 {
        return Err(DynError::NoGenerators);
    }
    let letters = gens.letters();
    if letters.len() > usize::from(u8::MAX) {
        return Err(DynError::TooManyGenerators(gens.float.len()));
    }
    let mut elements = vec![BallElement {
        word: Vec::new(),
        matrix: DMatrix::identity(n, n),
    }];
    let mut index = SpatialIndex::new(n * n, dedup_tol);
    index.insert(&elements[0].matrix, 0);
    let mut layer_ends = vec![1];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let candidates: Vec<BallElement> = elements[frontier.clone()]
            .par_iter()
            .flat_map_iter(|e| {
                letters.iter().enumerate().map(move |(l, m)| {
                    let mut word = e.word.clone();
                    word.push(l as u8);
                    BallElement {
                        word,
                        matrix: &e.matrix * m,
                    }
                })
            })
            .collect();
        let start = elements.len();
        for c in candidates {
            if !index.find(&c.matrix, &elements) {
                if elements.len() >= element_cap {
                    return Err(DynError::BudgetExceeded {
                        elements: elements.len() + 1,
                        cap: element_cap,
                    });
                }
                index.insert(&c.matrix, elements.len());
                elements.push(c);
            }
        }
        layer_ends.push(elements.len());
        frontier = start..elements.len();
    }
    Ok(WordBall {
        n,
        generator_count: gens.float.len(),
        radius,
        dedup_tol,
        elements,
        layer_ends,
    })
}

/// Plane rotation by `angle` in coordinates `(i, j)` of `R^n`.
pub fn plane_rotation(n: usize, i: usize, j: usize, angle: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(n, n);
    let (s, c) = angle.sin_cos();
    m[(i, i)] = c;
    m[(i, j)] = -s;
    m[(j, i)] = s;
    m[(j, j)] = c;
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn identity_generator_gives_singleton() {
        let g = GeneratorImages::from_float(vec![DMatrix::identity(3, 3)]);
        let b = enumerate_ball(&g, 5, DEFAULT_DEDUP_TOL, 1000).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.is_finite_group());
    }

    #[test]
    fn cyclic_group_of_order_five() {
        let g = GeneratorImages::from_float(vec![plane_rotation(3, 0, 1, TAU / 5.0)]);
        let b = enumerate_ball(&g, 5, DEFAULT_DEDUP_TOL, 1000).unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(word_string(&b.elements[1].word), "a");
        assert_eq!(word_string(&b.elements[2].word), "A");
    }

    #[test]
    fn rejects_non_orthogonal() {
        let mut m = DMatrix::identity(2, 2);
        m[(0, 0)] = 1.1;
        let g = GeneratorImages::from_float(vec![m]);
        assert!(matches!(
            enumerate_ball(&g, 1, DEFAULT_DEDUP_TOL, 10),
            Err(DynError::NotOrthogonal { index: 0, .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let g = GeneratorImages::from_float(vec![plane_rotation(2, 0, 1, 1.0)]);
        assert!(matches!(
            enumerate_ball(&g, 50, DEFAULT_DEDUP_TOL, 10),
            Err(DynError::BudgetExceeded { .. })
        ));
    }
}
