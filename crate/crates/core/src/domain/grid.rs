use num_complex::Complex64 as C64;

use super::curve::SmoothCurve;
use super::marked::{Location, MarkedDomain};
use crate::error::{Error, Result};

/// Nodes of one boundary curve. Positions and derivatives come from the raw
/// counterclockwise parametrization; `tangent` and `normal` are oriented so
/// the domain lies on the left and the normal points out of the domain.
#[derive(Debug, Clone)]
pub struct CurveGrid {
    /// `+1` for the outer curve, `-1` for holes.
    pub sign: f64,
    pub theta: Vec<f64>,
    pub z: Vec<C64>,
    /// `dz/dθ` of the counterclockwise parametrization.
    pub dz: Vec<C64>,
    pub ddz: Vec<C64>,
    /// Oriented tangent `sign · z'`.
    pub tangent: Vec<C64>,
    /// Outward unit normal.
    pub normal: Vec<C64>,
    /// Arclength weights `(2π/N)|z'|`.
    pub weights: Vec<f64>,
}

impl CurveGrid {
    fn new(curve: &SmoothCurve, n: usize) -> Self {
        let sign = curve.orientation().sign();
        let theta = crate::fourier::nodes(n);
        let z: Vec<C64> = theta.iter().map(|&t| curve.z(t)).collect();
        let dz: Vec<C64> = theta.iter().map(|&t| curve.dz(t)).collect();
        let ddz: Vec<C64> = theta.iter().map(|&t| curve.ddz(t)).collect();
        let tangent: Vec<C64> = dz.iter().map(|&d| d * sign).collect();
        let normal = tangent.iter().map(|&t| C64::new(0.0, -1.0) * t / t.norm()).collect();
        let h = std::f64::consts::TAU / n as f64;
        let weights = dz.iter().map(|d| h * d.norm()).collect();
        Self { sign, theta, z, dz, ddz, tangent, normal, weights }
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn arclength(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn unit_tangent(&self, m: usize) -> C64 {
        self.tangent[m] / self.tangent[m].norm()
    }
}

/// Equispaced discretization of every boundary curve of a domain.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    pub domain: MarkedDomain,
    pub n: usize,
    pub curves: Vec<CurveGrid>,
    spacing: f64,
}

impl BoundaryGrid {
    pub fn new(domain: &MarkedDomain, n: usize) -> Result<Self> {
        if n < 16 || n % 2 != 0 {
            return Err(Error::Input(format!("nodes per curve must be even and >= 16, got {n}")));
        }
        let curves: Vec<CurveGrid> = domain.curves().iter().map(|c| CurveGrid::new(c, n)).collect();
        let max_speed = curves.iter().flat_map(|c| c.dz.iter().map(|d| d.norm())).fold(0.0, f64::max);
        let spacing = std::f64::consts::TAU * max_speed / n as f64;
        Ok(Self { domain: domain.clone(), n, curves, spacing })
    }

    pub fn total_nodes(&self) -> usize {
        self.n * self.curves.len()
    }

    /// `2π max|z'| / N`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Width of the near-boundary exclusion band.
    pub fn band(&self) -> f64 {
        5.0 * self.spacing
    }

    /// Nearest node as `(curve, node, distance)`.
    pub fn nearest_node(&self, p: C64) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::INFINITY);
        for (j, c) in self.curves.iter().enumerate() {
            for (m, &z) in c.z.iter().enumerate() {
                let d = (z - p).norm();
                if d < best.2 {
                    best = (j, m, d);
                }
            }
        }
        best
    }

    pub fn classify(&self, p: C64) -> Location {
        let (_, _, d) = self.nearest_node(p);
        if d < self.band() || self.domain.distance_to_boundary(p) < self.band() {
            Location::NearBoundary
        } else if self.domain.is_interior(p) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Error unless `p` is inside and clear of the exclusion band.
    pub fn require_interior(&self, p: C64) -> Result<()> {
        match self.classify(p) {
            Location::Inside => Ok(()),
            Location::NearBoundary => Err(Error::NearBoundary { re: p.re, im: p.im }),
            Location::Outside => Err(Error::OutsideDomain { re: p.re, im: p.im }),
        }
    }

    /// Apply `f` to every node, returning per-curve vectors.
    pub fn map_nodes<T>(&self, mut f: impl FnMut(usize, usize) -> T) -> Vec<Vec<T>> {
        self.curves
            .iter()
            .enumerate()
            .map(|(j, c)| (0..c.len()).map(|m| f(j, m)).collect())
            .collect()
    }

    /// `Σ_j ∮_{C_j} f ds` for per-node values.
    pub fn integrate(&self, values: &[Vec<f64>]) -> f64 {
        (0..self.curves.len()).map(|j| self.integrate_curve(j, &values[j])).sum()
    }

    pub fn integrate_curve(&self, j: usize, values: &[f64]) -> f64 {
        self.curves[j].weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}

/// Sample the boundary of `domain` with `n` nodes per curve.
pub fn sample_boundary(domain: &MarkedDomain, n: usize) -> Result<BoundaryGrid> {
    BoundaryGrid::new(domain, n)
}
