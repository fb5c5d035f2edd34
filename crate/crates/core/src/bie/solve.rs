use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Dyn, LU};
use num_complex::Complex64 as C64;

use super::field::{HarmonicField, LayerKind};
use crate::domain::BoundaryGrid;
use crate::error::{Error, Result};
use crate::fourier;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Systems with a condition estimate above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Relative tolerance of the Neumann compatibility test.
pub const COMPATIBILITY_TOL: f64 = 1e-8;

/// Interior double-layer operator `½I + K` in the Cauchy-integral
/// convention: a constant density on a counterclockwise outer curve
/// reproduces that constant inside.
fn double_layer_matrix(grid: &BoundaryGrid) -> DMatrix<f64> {
    let n = grid.n;
    let size = grid.total_nodes();
    let inv_n = 1.0 / n as f64;
    let mut a = DMatrix::zeros(size, size);
    for (j, cj) in grid.curves.iter().enumerate() {
        for m in 0..n {
            let row = j * n + m;
            for (l, cl) in grid.curves.iter().enumerate() {
                for k in 0..n {
                    let col = l * n + k;
                    a[(row, col)] = if row == col {
                        0.5 + inv_n * (cj.sign * cj.ddz[m] / (2.0 * cj.dz[m])).im
                    } else {
                        inv_n * (cl.tangent[k] / (cl.z[k] - cj.z[m])).im
                    };
                }
            }
        }
    }
    a
}

/// Interior normal derivative of the single layer
/// `S[σ](z) = -(1/2π) ∮ σ log|z - ζ| ds`, that is `½I + K'`.
fn single_layer_normal_matrix(grid: &BoundaryGrid) -> DMatrix<f64> {
    let n = grid.n;
    let size = grid.total_nodes();
    let inv_n = 1.0 / n as f64;
    let mut a = DMatrix::zeros(size, size);
    for (j, cj) in grid.curves.iter().enumerate() {
        for m in 0..n {
            let row = j * n + m;
            for (l, cl) in grid.curves.iter().enumerate() {
                for k in 0..n {
                    let col = l * n + k;
                    a[(row, col)] = if row == col {
                        0.5 - inv_n * cj.sign * (cj.ddz[m] / (2.0 * cj.dz[m])).im
                    } else {
                        -inv_n * cl.dz[k].norm() * (cj.normal[m] / (cj.z[m] - cl.z[k])).re
                    };
                }
            }
        }
    }
    a
}

/// LU factorization with a condition check.
#[derive(Debug, Clone)]
struct Factored {
    lu: LU<f64, Dyn, Dyn>,
}

impl Factored {
    fn new(a: DMatrix<f64>) -> Result<Self> {
        let norm1 = (0..a.ncols()).map(|c| a.column(c).abs().sum()).fold(0.0, f64::max);
        let lu = a.lu();
        let size = lu.l().nrows();
        // Inverse power iteration for a lower bound on ||A^{-1}||.
        let mut x = DVector::from_fn(size, |i, _| 1.0 + 0.1 * (i % 7) as f64 - 0.05 * (i % 3) as f64);
        x /= x.norm();
        let mut inv_norm: f64 = 0.0;
        for _ in 0..4 {
            let y = lu.solve(&x).ok_or(Error::SolveFailure { condition: f64::INFINITY })?;
            let ny = y.norm();
            if !ny.is_finite() {
                return Err(Error::SolveFailure { condition: f64::INFINITY });
            }
            inv_norm = inv_norm.max(ny);
            x = y / ny;
        }
        let condition = norm1 * inv_norm;
        if !(condition <= MAX_CONDITION) {
            return Err(Error::SolveFailure { condition });
        }
        Ok(Self { lu })
    }

    fn solve(&self, rhs: &DVector<f64>) -> Result<DVector<f64>> {
        self.lu.solve(rhs).ok_or(Error::SolveFailure { condition: f64::INFINITY })
    }
}

fn flatten(grid: &BoundaryGrid, values: &[Vec<f64>], extra: usize) -> DVector<f64> {
    let mut v = DVector::zeros(grid.total_nodes() + extra);
    for (j, vals) in values.iter().enumerate() {
        for (m, &x) in vals.iter().enumerate() {
            v[j * grid.n + m] = x;
        }
    }
    v
}

fn split(grid: &BoundaryGrid, x: &DVector<f64>) -> Vec<Vec<f64>> {
    (0..grid.curves.len())
        .map(|j| (0..grid.n).map(|m| x[j * grid.n + m]).collect())
        .collect()
}

fn real_to_cauchy(d: &[Vec<f64>]) -> Vec<Vec<C64>> {
    d.iter().map(|v| v.iter().map(|&x| C64::new(x, 0.0)).collect()).collect()
}

/// Factored modified Dirichlet system: find harmonic `u` with `u = g + c_j`
/// on `C_j`, zero flux through every curve, `c_1 = 0` on the outer curve.
///
/// The unknowns are a double-layer density plus the hole constants; a
/// zero-mean condition per hole removes the null space of `½I + K`.
#[derive(Debug, Clone)]
pub struct ModifiedDirichletSolver {
    grid: Arc<BoundaryGrid>,
    system: Factored,
}

impl ModifiedDirichletSolver {
    pub fn new(grid: Arc<BoundaryGrid>) -> Result<Self> {
        let (n, nc) = (grid.n, grid.curves.len());
        let size = grid.total_nodes() + nc - 1;
        let k = double_layer_matrix(&grid);
        let mut a = DMatrix::zeros(size, size);
        a.view_mut((0, 0), (k.nrows(), k.ncols())).copy_from(&k);
        for h in 1..nc {
            let col = grid.total_nodes() + h - 1;
            for m in 0..n {
                a[(h * n + m, col)] = -1.0;
                a[(col, h * n + m)] = 1.0 / n as f64;
            }
        }
        Ok(Self { system: Factored::new(a)?, grid })
    }

    pub fn grid(&self) -> &Arc<BoundaryGrid> {
        &self.grid
    }

    pub fn solve(&self, g: &[Vec<f64>]) -> Result<HarmonicField> {
        let nc = self.grid.curves.len();
        let x = self.system.solve(&flatten(&self.grid, g, nc - 1))?;
        let mu = split(&self.grid, &x);
        let mut constants = vec![0.0; nc];
        for (h, c) in constants.iter_mut().enumerate().skip(1) {
            *c = x[self.grid.total_nodes() + h - 1];
        }
        let cauchy = real_to_cauchy(&mu);
        Ok(HarmonicField::new(self.grid.clone(), LayerKind::Double, Vec::new(), mu, cauchy, constants))
    }

    pub fn solve_fn(&self, g: impl Fn(C64) -> f64) -> Result<HarmonicField> {
        let values = self.grid.map_nodes(|j, m| g(self.grid.curves[j].z[m]));
        self.solve(&values)
    }
}

/// Factored Dirichlet system with one logarithmic source inside each hole.
#[derive(Debug, Clone)]
pub struct DirichletSolver {
    grid: Arc<BoundaryGrid>,
    centers: Vec<C64>,
    system: Factored,
}

impl DirichletSolver {
    pub fn new(grid: Arc<BoundaryGrid>) -> Result<Self> {
        let (n, nc) = (grid.n, grid.curves.len());
        let size = grid.total_nodes() + nc - 1;
        let centers: Vec<C64> = (1..nc).map(|h| grid.domain.hole_center(h)).collect();
        let k = double_layer_matrix(&grid);
        let mut a = DMatrix::zeros(size, size);
        a.view_mut((0, 0), (k.nrows(), k.ncols())).copy_from(&k);
        for h in 1..nc {
            let col = grid.total_nodes() + h - 1;
            for (j, c) in grid.curves.iter().enumerate() {
                for m in 0..n {
                    a[(j * n + m, col)] = (c.z[m] - centers[h - 1]).norm().ln();
                }
            }
            for m in 0..n {
                a[(col, h * n + m)] = 1.0 / n as f64;
            }
        }
        Ok(Self { system: Factored::new(a)?, grid, centers })
    }

    pub fn solve(&self, g: &[Vec<f64>]) -> Result<HarmonicField> {
        let nc = self.grid.curves.len();
        let x = self.system.solve(&flatten(&self.grid, g, nc - 1))?;
        let mu = split(&self.grid, &x);
        let logs = (1..nc).map(|h| (self.centers[h - 1], x[self.grid.total_nodes() + h - 1])).collect();
        let cauchy = real_to_cauchy(&mu);
        Ok(HarmonicField::new(self.grid.clone(), LayerKind::Double, logs, mu, cauchy, vec![0.0; nc]))
    }

    pub fn solve_fn(&self, g: impl Fn(C64) -> f64) -> Result<HarmonicField> {
        let values = self.grid.map_nodes(|j, m| g(self.grid.curves[j].z[m]));
        self.solve(&values)
    }
}

/// Factored Neumann system: single layer plus a rank-one term fixing the
/// total charge to zero.
#[derive(Debug, Clone)]
pub struct NeumannSolver {
    grid: Arc<BoundaryGrid>,
    centers: Vec<C64>,
    system: Factored,
}

impl NeumannSolver {
    pub fn new(grid: Arc<BoundaryGrid>) -> Result<Self> {
        let n = grid.n;
        let mut a = single_layer_normal_matrix(&grid);
        let length: f64 = grid.curves.iter().map(|c| c.arclength()).sum();
        for (l, c) in grid.curves.iter().enumerate() {
            for k in 0..n {
                let w = c.weights[k] / length;
                a.column_mut(l * n + k).add_scalar_mut(w);
            }
        }
        let centers = (1..grid.curves.len()).map(|h| grid.domain.hole_center(h)).collect();
        Ok(Self { system: Factored::new(a)?, grid, centers })
    }

    /// Solve `∂u/∂n = h` at the nodes.
    pub fn solve(&self, h: &[Vec<f64>]) -> Result<HarmonicField> {
        let g = &self.grid;
        let total = g.integrate(h);
        let scale: f64 = g.integrate(&h.iter().map(|v| v.iter().map(|x| x.abs()).collect()).collect::<Vec<_>>());
        if total.abs() > COMPATIBILITY_TOL * scale.max(f64::MIN_POSITIVE) && total.abs() > 0.0 {
            return Err(Error::IncompatibleData { residual: total });
        }
        // Hole sources carry the per-hole flux so every curve's layer charge
        // vanishes and the conjugate of the layer part is single-valued.
        let logs: Vec<(C64, f64)> = (1..g.curves.len())
            .map(|j| (self.centers[j - 1], -g.integrate_curve(j, &h[j]) / TAU))
            .collect();
        let rhs = g.map_nodes(|j, m| {
            let (z, nrm) = (g.curves[j].z[m], g.curves[j].normal[m]);
            h[j][m] - logs.iter().map(|&(c, s)| s * (nrm / (z - c)).re).sum::<f64>()
        });
        let x = self.system.solve(&flatten(g, &rhs, 0))?;
        let sigma = split(g, &x);
        let cauchy = sigma
            .iter()
            .zip(&g.curves)
            .map(|(s, c)| {
                let charge: Vec<f64> = s.iter().zip(&c.dz).map(|(s, d)| s * d.norm()).collect();
                fourier::antiderivative_real(&charge)
                    .into_iter()
                    .map(|q| I * c.sign * q)
                    .collect()
            })
            .collect();
        Ok(HarmonicField::new(g.clone(), LayerKind::Single, logs, sigma, cauchy, vec![0.0; g.curves.len()]))
    }

    pub fn solve_fn(&self, h: impl Fn(C64, C64) -> f64) -> Result<HarmonicField> {
        let values = self.grid.map_nodes(|j, m| h(self.grid.curves[j].z[m], self.grid.curves[j].normal[m]));
        self.solve(&values)
    }
}

/// Dirichlet problem with boundary data `g(z)`.
pub fn solve_dirichlet(grid: &Arc<BoundaryGrid>, g: impl Fn(C64) -> f64) -> Result<HarmonicField> {
    DirichletSolver::new(grid.clone())?.solve_fn(g)
}

/// Modified Dirichlet problem with boundary data `g(z)`.
pub fn solve_modified_dirichlet(grid: &Arc<BoundaryGrid>, g: impl Fn(C64) -> f64) -> Result<HarmonicField> {
    ModifiedDirichletSolver::new(grid.clone())?.solve_fn(g)
}

/// Neumann problem with normal-derivative data `h(z, n)`, `n` the outward
/// unit normal at `z`.
pub fn solve_neumann(grid: &Arc<BoundaryGrid>, h: impl Fn(C64, C64) -> f64) -> Result<HarmonicField> {
    NeumannSolver::new(grid.clone())?.solve_fn(h)
}

/// Green's function `g(z) = -log|z - pole| + harmonic`, zero on the boundary.
pub fn green_function(grid: &Arc<BoundaryGrid>, pole: C64) -> Result<HarmonicField> {
    grid.require_interior(pole)?;
    Ok(solve_dirichlet(grid, |z| (z - pole).norm().ln())?.with_log(pole, -1.0))
}
