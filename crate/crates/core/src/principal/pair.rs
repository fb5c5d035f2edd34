use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::bie::{HarmonicField, ModifiedDirichletSolver, NeumannSolver};
use crate::domain::{BoundaryGrid, MarkedDomain};
use crate::error::{Error, Result};

/// Marked points closer than this many node spacings are refused.
pub const TOO_CLOSE_SPACINGS: f64 = 2.0;

/// The L₁ and L₀ principal functions of a marked domain together with
/// their constants at the zero point.
///
/// Both fields include the singular part `-log|z-a| + log|z-b|` and are
/// gauged so that `p + log|z-a| → 0` and `q + log|z-a| → 0` at `a`.
#[derive(Debug, Clone)]
pub struct PrincipalPair {
    pub grid: Arc<BoundaryGrid>,
    pub p: HarmonicField,
    pub q: HarmonicField,
    pub alpha: f64,
    pub beta: f64,
    /// Boundary value of `p` on each curve.
    pub c: Vec<f64>,
    /// `∂h_ξ/∂z` at `b`, where `p = log|z-b| + h_ξ`.
    pub dh_xi_dz: C64,
    /// `∂𝔥_ξ/∂z` at `b`, where `q = log|z-b| + 𝔥_ξ`.
    pub dmh_xi_dz: C64,
    pub(crate) solver: Arc<ModifiedDirichletSolver>,
}

impl PrincipalPair {
    pub fn a(&self) -> C64 {
        self.grid.domain.a()
    }

    pub fn b(&self) -> C64 {
        self.grid.domain.b()
    }

    pub fn span(&self) -> f64 {
        self.alpha - self.beta
    }

    /// Factored modified Dirichlet system of this grid, reusable for
    /// further solves on the same domain.
    pub fn modified_dirichlet(&self) -> &Arc<ModifiedDirichletSolver> {
        &self.solver
    }

    /// `(z-a)(z-b) · 2 ∂u/∂z` for a field whose singular part sits at `a`
    /// and `b`, regular everywhere in the closure of the domain.
    pub(crate) fn scaled_dz(&self, field: &HarmonicField, z: C64, holo_dz: C64) -> C64 {
        let (a, b) = (self.a(), self.b());
        let mut acc = (z - a) * (z - b) * holo_dz;
        for &(pt, s) in &field.logs {
            acc += if pt == a {
                s * (z - b)
            } else if pt == b {
                s * (z - a)
            } else {
                s * (z - a) * (z - b) / (z - pt)
            };
        }
        acc
    }
}

/// Solve for the principal pair on `domain` with `n` nodes per curve.
pub fn compute_principal_pair(domain: &MarkedDomain, n: usize) -> Result<PrincipalPair> {
    principal_pair_on(Arc::new(BoundaryGrid::new(domain, n)?))
}

pub fn principal_pair_on(grid: Arc<BoundaryGrid>) -> Result<PrincipalPair> {
    let (a, b) = (grid.domain.a(), grid.domain.b());
    let distance = (a - b).norm();
    if distance < TOO_CLOSE_SPACINGS * grid.spacing() {
        return Err(Error::MarkedPointsTooClose { distance });
    }
    let solver = Arc::new(ModifiedDirichletSolver::new(grid.clone())?);
    let up = solver.solve_fn(|z| (z - a).norm().ln() - (z - b).norm().ln())?;
    let singular = |z: C64, nrm: C64| -> f64 { -(nrm / (z - a)).re + (nrm / (z - b)).re };
    let uq = NeumannSolver::new(grid.clone())?.solve_fn(|z, nrm| -singular(z, nrm))?;

    let log_ab = distance.ln();
    let finish = |u: HarmonicField| -> (HarmonicField, f64, C64) {
        let (ua, ub) = (u.value_unchecked(a), u.value_unchecked(b));
        let constant = -2.0 * log_ab + ub - ua;
        let d = -1.0 / (2.0 * (b - a)) + u.gradient_unchecked(b);
        let field = u.with_log(a, -1.0).with_log(b, 1.0).with_gauge(-log_ab - ua);
        (field, constant, d)
    };
    let (p, alpha, dh_xi_dz) = finish(up);
    let (q, beta, dmh_xi_dz) = finish(uq);
    let c = p.constants.iter().map(|cj| cj + p.gauge).collect();
    Ok(PrincipalPair { grid, p, q, alpha, beta, c, dh_xi_dz, dmh_xi_dz, solver })
}
