use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::ball::WordBall;
use super::DynError;

/// Haar-distributed elements of `SO(n)`: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal moved into `Q`, then one column flipped if the
/// determinant is negative.
pub fn haar_probes(n: usize, count: usize, seed: u64) -> Vec<DMatrix<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
            let qr = g.qr();
            let r = qr.r();
            let mut q = qr.q();
            for j in 0..n {
                if r[(j, j)] < 0.0 {
                    q.column_mut(j).neg_mut();
                }
            }
            if q.determinant() < 0.0 {
                q.column_mut(0).neg_mut();
            }
            q
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub metric: String,
    pub probes: usize,
    pub seed: u64,
    pub radii: Vec<usize>,
    pub ball_sizes: Vec<usize>,
    pub covering_radius: Vec<f64>,
    pub finite_group: bool,
}

impl DensityReport {
    pub fn is_non_increasing(&self) -> bool {
        self.covering_radius.windows(2).all(|w| w[1] <= w[0])
    }

    /// Some step after radius 2 strictly decreases the covering radius.
    pub fn strictly_decreases_after(&self, radius: usize) -> bool {
        self.radii
            .windows(2)
            .zip(self.covering_radius.windows(2))
            .any(|(r, c)| r[0] >= radius && c[1] < c[0])
    }
}

/// Covering radius of every sub-ball of radius `1..=ball.radius` against
/// the same probes, in one pass over the ball.
pub fn covering_radius(ball: &WordBall, probes: usize, seed: u64) -> Result<DensityReport, DynError> {
    if ball.is_empty() {
        return Err(DynError::EmptyBall);
    }
    let targets = haar_probes(ball.n, probes, seed);
    // per probe: nearest distance within each word-length layer
    let per_probe: Vec<Vec<f64>> = targets
        .par_iter()
        .map(|p| {
            let mut best = Vec::with_capacity(ball.radius + 1);
            let mut current = f64::INFINITY;
            let mut start = 0;
            for &end in &ball.layer_ends {
                for e in &ball.elements[start..end] {
                    let d = (&e.matrix - p).norm();
                    if d < current {
                        current = d;
                    }
                }
                best.push(current);
                start = end;
            }
            best
        })
        .collect();
    let radii: Vec<usize> = (1..=ball.radius).collect();
    let covering_radius = radii
        .iter()
        .map(|&r| per_probe.iter().map(|b| b[r]).fold(0.0, f64::max))
        .collect();
    Ok(DensityReport {
        metric: "frobenius".into(),
        probes,
        seed,
        ball_sizes: radii.iter().map(|&r| ball.layer_ends[r]).collect(),
        radii,
        covering_radius,
        finite_group: ball.is_finite_group(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::ball::*;
    use super::*;

    #[test]
    fn probes_are_special_orthogonal_and_seeded() {
        let a = haar_probes(4, 20, 7);
        let b = haar_probes(4, 20, 7);
        assert_eq!(a, b);
        for q in &a {
            assert!(orthogonality_residual(q) < 1e-12);
            assert!((q.determinant() - 1.0).abs() < 1e-12);
        }
        assert_ne!(haar_probes(4, 1, 8)[0], a[0]);
    }

    #[test]
    fn identity_ball_on_circle() {
        let g = GeneratorImages::from_float(vec![DMatrix::identity(2, 2)]);
        let ball = enumerate_ball(&g, 1, DEFAULT_DEDUP_TOL, 10).unwrap();
        let rep = covering_radius(&ball, 2000, 3).unwrap();
        // distance from I to R(theta) is sqrt(4 - 4 cos theta) <= 2 sqrt2
        let c = rep.covering_radius[0];
        assert!(c <= 2.0 * 2f64.sqrt() + 1e-12);
        assert!(c > 2.0 * 2f64.sqrt() - 1e-3);
    }

    #[test]
    fn larger_cyclic_groups_cover_better() {
        let mut last = f64::INFINITY;
        for n in [4, 8, 16, 32] {
            let g = GeneratorImages::from_float(vec![plane_rotation(2, 0, 1, std::f64::consts::TAU / n as f64)]);
            let ball = enumerate_ball(&g, n, DEFAULT_DEDUP_TOL, 100).unwrap();
            assert_eq!(ball.len(), n);
            let c = *covering_radius(&ball, 500, 1).unwrap().covering_radius.last().unwrap();
            assert!(c < last);
            last = c;
        }
    }
}
