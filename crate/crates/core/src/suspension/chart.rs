//! The Maurer-Cartan form `omega = g^-1 dg` pulled back to exponential
//! coordinates on `SO(n)`. Its derivative is taken by central differences,
//! so `d omega + [omega, omega]/2` is pure discretization error.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::orthogonality_residual;

use super::SuspensionError;

pub const DEFAULT_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
pub const DEFAULT_CHART_RADIUS: f64 = 0.5;
const GRID_ORTHOGONALITY_TOL: f64 = 1e-8;
/// Residuals at or below this are round-off and carry no order information.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    /// `x -> exp(sum x_k E_k)` over the basis `E_ab`, `a < b`, of `so(n)`.
    Exponential,
    /// Angles of the maximal torus of `SO(n)`, one per 2x2 diagonal block.
    Torus,
}

#[derive(Clone, Debug)]
pub struct MCChart {
    pub n: usize,
    pub kind: ChartKind,
    pub points: Vec<Vec<f64>>,
    pub steps: Vec<f64>,
    pub seed: u64,
}

/// Skew basis `E_ab = e_a e_b^T - e_b e_a^T`, pairs in lex order.
pub fn skew_basis(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut e = DMatrix::zeros(n, n);
            e[(a, b)] = 1.0;
            e[(b, a)] = -1.0;
            out.push(e);
        }
    }
    out
}

/// `d/dt exp(x + t e)` at `t = 0`, read off the exponential of a block
/// upper-triangular matrix.
pub fn exp_derivative(x: &DMatrix<f64>, e: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = x.nrows();
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(x);
    big.view_mut((n, n), (n, n)).copy_from(x);
    big.view_mut((0, n), (n, n)).copy_from(e);
    let ex = big.exp();
    (ex.view((0, 0), (n, n)).into_owned(), ex.view((0, n), (n, n)).into_owned())
}

impl MCChart {
    /// `samples` points drawn uniformly from the ball of the given radius.
    pub fn new(n: usize, kind: ChartKind, samples: usize, radius: f64, seed: u64) -> Result<Self, SuspensionError> {
        if n < 2 || (kind == ChartKind::Torus && n % 2 == 1) {
            return Err(SuspensionError::InvalidChart(format!("no {kind:?} chart on SO({n})")));
        }
        if !(radius > 0.0 && radius <= DEFAULT_CHART_RADIUS) {
            return Err(SuspensionError::InvalidChart(format!(
                "radius {radius} outside (0, {DEFAULT_CHART_RADIUS}]"
            )));
        }
        let mut chart = MCChart {
            n,
            kind,
            points: Vec::new(),
            steps: DEFAULT_STEPS.to_vec(),
            seed,
        };
        let k = chart.coordinate_dim();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let dir: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
            let r = radius * rng.random::<f64>().powf(1.0 / k as f64);
            chart.points.push(dir.iter().map(|x| x * r / norm).collect());
        }
        Ok(chart)
    }

    pub fn with_steps(mut self, steps: Vec<f64>) -> Self {
        self.steps = steps;
        self
    }

    pub fn coordinate_dim(&self) -> usize {
        match self.kind {
            ChartKind::Exponential => self.n * (self.n - 1) / 2,
            ChartKind::Torus => self.n / 2,
        }
    }

    fn directions(&self) -> Vec<DMatrix<f64>> {
        let basis = skew_basis(self.n);
        match self.kind {
            ChartKind::Exponential => basis,
            ChartKind::Torus => (0..self.n / 2)
                .map(|i| {
                    let mut e = DMatrix::zeros(self.n, self.n);
                    e[(2 * i, 2 * i + 1)] = 1.0;
                    e[(2 * i + 1, 2 * i)] = -1.0;
                    e
                })
                .collect(),
        }
    }

    fn algebra_element(&self, dirs: &[DMatrix<f64>], x: &[f64]) -> DMatrix<f64> {
        dirs.iter()
            .zip(x)
            .fold(DMatrix::zeros(self.n, self.n), |acc, (e, c)| acc + e * *c)
    }

    pub fn point(&self, x: &[f64]) -> DMatrix<f64> {
        self.algebra_element(&self.directions(), x).exp()
    }

    /// `omega(d/dx_k)` at `x` for every coordinate `k`.
    fn omega(&self, dirs: &[DMatrix<f64>], x: &[f64]) -> Result<Vec<DMatrix<f64>>, SuspensionError> {
        let xm = self.algebra_element(dirs, x);
        let mut out = Vec::with_capacity(dirs.len());
        let mut g_inv: Option<DMatrix<f64>> = None;
        for e in dirs {
            let (g, dg) = exp_derivative(&xm, e);
            if g_inv.is_none() {
                if orthogonality_residual(&g) > GRID_ORTHOGONALITY_TOL {
                    return Err(SuspensionError::SingularSample(format!(
                        "chart point is off SO({}) by {:e}",
                        self.n,
                        orthogonality_residual(&g)
                    )));
                }
                g_inv = Some(
                    g.try_inverse()
                        .ok_or_else(|| SuspensionError::SingularSample("chart point is not invertible".into()))?,
                );
            }
            out.push(connection_form(g_inv.as_ref().expect("set above"), &dg));
        }
        Ok(out)
    }
}

/// The connection form on the group factor: `w in T_g G -> g^-1 w`, given `g^-1`.
pub fn connection_form(g_inv: &DMatrix<f64>, w: &DMatrix<f64>) -> DMatrix<f64> {
    g_inv * w
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCResidualReport {
    pub n: usize,
    pub kind: ChartKind,
    pub samples: usize,
    pub steps: Vec<f64>,
    /// Max-norm of `d omega + [omega, omega]/2` over samples and coordinate pairs.
    pub residuals: Vec<f64>,
    /// Observed order between consecutive steps.
    pub orders: Vec<f64>,
    /// Mean of `orders`; absent when the residual is at round-off level.
    pub order: Option<f64>,
}

fn check_steps(steps: &[f64]) -> Result<(), SuspensionError> {
    if steps.len() < 3 || steps.iter().any(|h| !(*h > 0.0)) || steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SuspensionError::InvalidChart(
            "steps must be positive, strictly decreasing and at least three".into(),
        ));
    }
    Ok(())
}

/// Residual of the Maurer-Cartan equation for a 1-form given by its values
/// `omega(x)[k] = omega(d/dx_k)` on a coordinate chart.
pub fn mc_residual_for<F>(points: &[Vec<f64>], steps: &[f64], omega: F) -> Result<(Vec<f64>, Vec<f64>), SuspensionError>
where
    F: Fn(&[f64]) -> Result<Vec<DMatrix<f64>>, SuspensionError> + Sync,
{
    check_steps(steps)?;
    let shifted = |x: &[f64], k: usize, t: f64| -> Vec<f64> {
        let mut y = x.to_vec();
        y[k] += t;
        y
    };
    let mut residuals = Vec::with_capacity(steps.len());
    for &h in steps {
        let per_point: Vec<Result<f64, SuspensionError>> = points
            .par_iter()
            .map(|x| {
                let dim = x.len();
                let at = omega(x)?;
                let plus: Vec<Vec<DMatrix<f64>>> = (0..dim).map(|k| omega(&shifted(x, k, h))).collect::<Result<_, _>>()?;
                let minus: Vec<Vec<DMatrix<f64>>> = (0..dim).map(|k| omega(&shifted(x, k, -h))).collect::<Result<_, _>>()?;
                let mut worst = 0.0f64;
                for i in 0..dim {
                    for j in i + 1..dim {
                        let d_i_wj = (&plus[i][j] - &minus[i][j]) / (2.0 * h);
                        let d_j_wi = (&plus[j][i] - &minus[j][i]) / (2.0 * h);
                        let bracket = &at[i] * &at[j] - &at[j] * &at[i];
                        worst = worst.max((d_i_wj - d_j_wi + bracket).amax());
                    }
                }
                Ok(worst)
            })
            .collect();
        let mut worst = 0.0f64;
        for r in per_point {
            worst = worst.max(r?);
        }
        residuals.push(worst);
    }
    let orders = residuals
        .windows(2)
        .zip(steps.windows(2))
        .filter(|(r, _)| r[0] > ROUNDOFF_FLOOR && r[1] > ROUNDOFF_FLOOR)
        .map(|(r, h)| (r[0] / r[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    Ok((residuals, orders))
}

pub fn mc_residual(chart: &MCChart) -> Result<MCResidualReport, SuspensionError> {
    let dirs = chart.directions();
    let (residuals, orders) = mc_residual_for(&chart.points, &chart.steps, |x| chart.omega(&dirs, x))?;
    let order = if orders.is_empty() {
        None
    } else {
        Some(orders.iter().sum::<f64>() / orders.len() as f64)
    };
    Ok(MCResidualReport {
        n: chart.n,
        kind: chart.kind,
        samples: chart.points.len(),
        steps: chart.steps.clone(),
        residuals,
        orders,
        order,
    })
}

/// Largest change of the connection form under left translation by `gamma`,
/// over the chart points and seeded tangent vectors `g S`, `S` skew.
pub fn invariance_residual(chart: &MCChart, gamma: &DMatrix<f64>) -> Result<f64, SuspensionError> {
    if gamma.nrows() != chart.n || gamma.ncols() != chart.n {
        return Err(SuspensionError::InvalidChart(format!("translation is not {0}x{0}", chart.n)));
    }
    const TANGENTS_PER_POINT: usize = 4;
    let mut rng = ChaCha20Rng::seed_from_u64(chart.seed ^ 0x5eed);
    let mut worst = 0.0f64;
    for x in &chart.points {
        let g = chart.point(x);
        let g_inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| SuspensionError::SingularSample("chart point is not invertible".into()))?;
        let moved = gamma * &g;
        let moved_inv = moved
            .clone()
            .try_inverse()
            .ok_or_else(|| SuspensionError::SingularSample("translated point is not invertible".into()))?;
        for _ in 0..TANGENTS_PER_POINT {
            let a = DMatrix::<f64>::from_fn(chart.n, chart.n, |_, _| StandardNormal.sample(&mut rng));
            let w = &g * ((&a - a.transpose()) * 0.5);
            let before = connection_form(&g_inv, &w);
            let after = connection_form(&moved_inv, &(gamma * &w));
            worst = worst.max((after - before).amax());
        }
    }
    Ok(worst)
}
