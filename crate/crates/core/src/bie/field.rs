use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::domain::BoundaryGrid;
use crate::error::Result;
use crate::fourier;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Which layer the real density belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Double,
    Single,
}

/// Harmonic function `u = Σ s_i log|z - p_i| + Re F(z) + gauge` where `F` is
/// the Cauchy integral of a complex boundary density `φ`:
/// `F(z) = (1/2πi) ∮_{∂D} φ(ζ) dζ / (ζ - z)`.
///
/// Double-layer solutions have `φ = μ`; single-layer solutions are converted
/// to an equivalent Cauchy density so both share one evaluator, and `F` is
/// the holomorphic completion of the regular part.
#[derive(Debug, Clone)]
pub struct HarmonicField {
    grid: Arc<BoundaryGrid>,
    pub kind: LayerKind,
    /// `(p_i, s_i)` pairs of the singular part.
    pub logs: Vec<(C64, f64)>,
    /// Real layer density per curve.
    pub density: Vec<Vec<f64>>,
    cauchy: Vec<Vec<C64>>,
    cauchy_dtheta: Vec<Vec<C64>>,
    /// Per-curve constants `c_j` (modified Dirichlet solutions only).
    pub constants: Vec<f64>,
    pub gauge: f64,
}

/// Boundary values of a field and its first derivatives at the grid nodes.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    pub value: Vec<Vec<f64>>,
    /// Derivative along the outward normal.
    pub normal: Vec<Vec<f64>>,
    /// Derivative along the oriented tangent (domain on the left).
    pub tangential: Vec<Vec<f64>>,
    pub dz: Vec<Vec<C64>>,
}

impl HarmonicField {
    pub(crate) fn new(
        grid: Arc<BoundaryGrid>,
        kind: LayerKind,
        logs: Vec<(C64, f64)>,
        density: Vec<Vec<f64>>,
        cauchy: Vec<Vec<C64>>,
        constants: Vec<f64>,
    ) -> Self {
        let cauchy_dtheta = cauchy.iter().map(|c| fourier::derivative(c)).collect();
        Self { grid, kind, logs, density, cauchy, cauchy_dtheta, constants, gauge: 0.0 }
    }

    /// Field that is identically zero on `grid`.
    pub fn zero(grid: Arc<BoundaryGrid>) -> Self {
        let nc = grid.curves.len();
        let n = grid.n;
        Self::new(
            grid,
            LayerKind::Double,
            Vec::new(),
            vec![vec![0.0; n]; nc],
            vec![vec![C64::new(0.0, 0.0); n]; nc],
            vec![0.0; nc],
        )
    }

    pub fn grid(&self) -> &Arc<BoundaryGrid> {
        &self.grid
    }

    pub fn with_gauge(mut self, gauge: f64) -> Self {
        self.gauge = gauge;
        self
    }

    /// Add `s log|z - p|` to the singular part.
    pub fn with_log(mut self, p: C64, s: f64) -> Self {
        self.logs.push((p, s));
        self
    }

    /// Sum of two fields on the same grid.
    pub fn sum(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.grid, &other.grid), "fields live on different grids");
        let add_c = |a: &Vec<Vec<C64>>, b: &Vec<Vec<C64>>| -> Vec<Vec<C64>> {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
        };
        let mut logs = self.logs.clone();
        logs.extend(other.logs.iter().cloned());
        Self {
            grid: self.grid.clone(),
            kind: self.kind,
            logs,
            density: self
                .density
                .iter()
                .zip(&other.density)
                .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
                .collect(),
            cauchy: add_c(&self.cauchy, &other.cauchy),
            cauchy_dtheta: add_c(&self.cauchy_dtheta, &other.cauchy_dtheta),
            constants: self.constants.iter().zip(&other.constants).map(|(a, b)| a + b).collect(),
            gauge: self.gauge + other.gauge,
        }
    }

    fn singular_value(&self, z: C64) -> f64 {
        self.logs.iter().map(|&(p, s)| s * (z - p).norm().ln()).sum()
    }

    fn singular_dz(&self, z: C64) -> C64 {
        self.logs.iter().map(|&(p, s)| s / (2.0 * (z - p))).sum()
    }

    /// `F(z)` at an interior point, with the density value at the nearest
    /// node subtracted to keep the quadrature accurate close to the boundary.
    pub fn holo_unchecked(&self, z: C64) -> C64 {
        let (jn, mn, _) = self.grid.nearest_node(z);
        let phi0 = self.cauchy[jn][mn];
        let h = TAU / self.grid.n as f64;
        let mut acc = C64::new(0.0, 0.0);
        for (c, phi) in self.grid.curves.iter().zip(&self.cauchy) {
            for m in 0..c.len() {
                acc += (phi[m] - phi0) * c.tangent[m] / (c.z[m] - z);
            }
        }
        phi0 + acc * h / (TAU * I)
    }

    /// `F'(z)` at an interior point, subtracting the first-order Taylor
    /// polynomial of the density at the nearest node.
    pub fn holo_derivative_unchecked(&self, z: C64) -> C64 {
        let (jn, mn, _) = self.grid.nearest_node(z);
        let cg = &self.grid.curves[jn];
        let phi0 = self.cauchy[jn][mn];
        let zeta0 = cg.z[mn];
        let dphi0 = self.cauchy_dtheta[jn][mn] / cg.dz[mn];
        let h = TAU / self.grid.n as f64;
        let mut acc = C64::new(0.0, 0.0);
        for (c, phi) in self.grid.curves.iter().zip(&self.cauchy) {
            for m in 0..c.len() {
                let d = c.z[m] - z;
                acc += (phi[m] - phi0 - dphi0 * (c.z[m] - zeta0)) * c.tangent[m] / (d * d);
            }
        }
        dphi0 + acc * h / (TAU * I)
    }

    pub fn value_unchecked(&self, z: C64) -> f64 {
        self.singular_value(z) + self.holo_unchecked(z).re + self.gauge
    }

    pub fn gradient_unchecked(&self, z: C64) -> C64 {
        self.singular_dz(z) + 0.5 * self.holo_derivative_unchecked(z)
    }

    /// `u(z)`; errors inside the near-boundary band or outside the domain.
    pub fn value(&self, z: C64) -> Result<f64> {
        self.grid.require_interior(z)?;
        Ok(self.value_unchecked(z))
    }

    /// `∂u/∂z`, including the singular part.
    pub fn gradient(&self, z: C64) -> Result<C64> {
        self.grid.require_interior(z)?;
        Ok(self.gradient_unchecked(z))
    }

    pub fn evaluate(&self, points: &[C64]) -> Result<Vec<f64>> {
        points.iter().map(|&z| self.value(z)).collect()
    }

    pub fn complex_gradient(&self, points: &[C64]) -> Result<Vec<C64>> {
        points.iter().map(|&z| self.gradient(z)).collect()
    }

    /// Regular part of the value only (no logs, no gauge).
    pub fn regular_value_unchecked(&self, z: C64) -> f64 {
        self.holo_unchecked(z).re
    }

    /// Interior boundary limit of `F` at every node (Plemelj).
    pub fn boundary_holo(&self) -> Vec<Vec<C64>> {
        let g = &self.grid;
        let h = TAU / g.n as f64;
        g.map_nodes(|j, m| {
            let cj = &g.curves[j];
            let (zm, phim) = (cj.z[m], self.cauchy[j][m]);
            let mut acc = C64::new(0.0, 0.0);
            for (l, (c, phi)) in g.curves.iter().zip(&self.cauchy).enumerate() {
                for n in 0..c.len() {
                    if l == j && n == m {
                        continue;
                    }
                    acc += (phi[n] - phim) * c.tangent[n] / (c.z[n] - zm);
                }
            }
            phim + acc * h / (TAU * I) + cj.sign * self.cauchy_dtheta[j][m] / (I * g.n as f64)
        })
    }

    /// `F'` at the nodes, from spectral θ-differentiation of the boundary
    /// limit.
    pub fn boundary_holo_derivative_from(&self, holo: &[Vec<C64>]) -> Vec<Vec<C64>> {
        holo.iter()
            .zip(&self.grid.curves)
            .map(|(f, c)| fourier::derivative(f).iter().zip(&c.dz).map(|(d, dz)| d / dz).collect())
            .collect()
    }

    pub fn boundary_trace(&self) -> BoundaryTrace {
        let holo = self.boundary_holo();
        let dholo = self.boundary_holo_derivative_from(&holo);
        let g = &self.grid;
        let value = g.map_nodes(|j, m| holo[j][m].re + self.singular_value(g.curves[j].z[m]) + self.gauge);
        let dz = g.map_nodes(|j, m| 0.5 * dholo[j][m] + self.singular_dz(g.curves[j].z[m]));
        let normal = g.map_nodes(|j, m| 2.0 * (dz[j][m] * g.curves[j].normal[m]).re);
        let tangential = g.map_nodes(|j, m| 2.0 * (dz[j][m] * g.curves[j].unit_tangent(m)).re);
        BoundaryTrace { value, normal, tangential, dz }
    }

    /// `∮_{C_j} ∂u/∂n ds` for each curve.
    pub fn fluxes(&self) -> Vec<f64> {
        let t = self.boundary_trace();
        (0..self.grid.curves.len()).map(|j| self.grid.integrate_curve(j, &t.normal[j])).collect()
    }
}
