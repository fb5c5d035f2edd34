//! Nyström solvers for the Dirichlet, modified Dirichlet and Neumann
//! problems on domains bounded by analytic curves.
//!
//! All systems use the periodic trapezoidal rule, which converges
//! spectrally on analytic data. Every solution is represented as a
//! [`HarmonicField`]: explicit logarithmic terms plus the real part of a
//! Cauchy integral, so the holomorphic completion comes for free.

mod field;
mod solve;

pub use field::{BoundaryTrace, HarmonicField, LayerKind};
pub use solve::{
    green_function, solve_dirichlet, solve_modified_dirichlet, solve_neumann, DirichletSolver,
    ModifiedDirichletSolver, NeumannSolver, COMPATIBILITY_TOL, MAX_CONDITION,
};
