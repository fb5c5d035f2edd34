use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::expr::Expr;
use super::family::DomainFamily;
use crate::error::{Error, Result};
use crate::principal::{compute_principal_pair, PrincipalPair};
use crate::span::poincare_distance;

/// Hadamard coefficient and Levi curvature at one boundary point.
#[derive(Debug, Clone, Copy)]
pub struct Levi {
    pub k1: C64,
    pub k2: f64,
    /// Imaginary part of the `k₂` numerator over `|φ_z|³`; zero up to
    /// rounding for real `φ`.
    pub k2_residue: f64,
}

/// `k₁ = φ_t/|φ_z|` and
/// `k₂ = (φ_{tt̄}|φ_z|² - 2 Re{φ_{t̄z} φ_t φ_z̄} + |φ_t|² φ_{zz̄}) / |φ_z|³`.
pub fn levi(phi: &Expr, t: C64, z: C64) -> Result<Levi> {
    let w = phi.jet(t, z).wirtinger();
    let gz = w.z.norm();
    if gz < 1e-10 {
        return Err(Error::BoundaryNotSmooth(gz));
    }
    let num = w.t_tbar * gz * gz - 2.0 * (w.tbar_z * w.t * w.zbar).re + w.t.norm_sqr() * w.z_zbar;
    let k2 = num / gz.powi(3);
    Ok(Levi { k1: w.t / gz, k2: k2.re, k2_residue: k2.im })
}

pub fn eval_k1(family: &DomainFamily, t: C64, z: C64) -> Result<C64> {
    Ok(levi(&family.phi, t, z)?.k1)
}

pub fn eval_k2(family: &DomainFamily, t: C64, z: C64) -> Result<f64> {
    Ok(levi(&family.phi, t, z)?.k2)
}

/// `k₁` at every node, computed in the frame that keeps `a(t)` at the
/// origin.
fn translated_k(family: &DomainFamily, pair: &PrincipalPair, t: C64) -> Result<Vec<Vec<Levi>>> {
    let a = pair.a();
    pair.grid
        .curves
        .iter()
        .map(|c| c.z.iter().map(|&z| levi(&family.phi_translated, t, z - a)).collect())
        .collect()
}

/// Minimum of `k₂` over the boundary nodes of `R(t)`.
pub fn min_k2(family: &DomainFamily, pair: &PrincipalPair, t: C64) -> Result<f64> {
    let mut m = f64::INFINITY;
    for c in &pair.grid.curves {
        for &z in &c.z {
            m = m.min(eval_k2(family, t, z)?);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Alpha,
    Beta,
    Span,
    /// `log cosh d` for the Poincaré distance `d` (simply connected fibers).
    LogCoshDistance,
}

/// Right-hand sides of the first variation formulas at one parameter.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FirstVariation {
    /// `(1/π)∮ k₁|p_z|² ds + 2 ∂h_ξ/∂z · ξ'`.
    pub alpha: C64,
    /// `-(1/π)∮ k₁|q_z|² ds + 2 ∂𝔥_ξ/∂z · ξ'`.
    pub beta: C64,
    /// `(1/π)∮ k₁(|p_z|² + |q_z|²) ds`, with no `ξ'` terms.
    pub span: C64,
    /// `alpha - beta`, which keeps the `ξ'` terms.
    pub span_with_section_terms: C64,
}

impl FirstVariation {
    pub fn get(&self, q: Quantity) -> Option<C64> {
        match q {
            Quantity::Alpha => Some(self.alpha),
            Quantity::Beta => Some(self.beta),
            Quantity::Span => Some(self.span),
            Quantity::LogCoshDistance => None,
        }
    }
}

/// `ξ̃ = b - a` and its derivative, the zero point in the frame with `a` at
/// the origin.
fn relative_section(family: &DomainFamily, t: C64) -> C64 {
    family.section_b(t).1 - family.section_a(t).1
}

pub fn first_variation(family: &DomainFamily, t: C64, n: usize) -> Result<FirstVariation> {
    let pair = compute_principal_pair(&family.domain_at(t)?, n)?;
    first_variation_on(family, &pair, t)
}

pub fn first_variation_on(family: &DomainFamily, pair: &PrincipalPair, t: C64) -> Result<FirstVariation> {
    let k = translated_k(family, pair, t)?;
    let (tp, tq) = (pair.p.boundary_trace(), pair.q.boundary_trace());
    let mut ip = C64::new(0.0, 0.0);
    let mut iq = C64::new(0.0, 0.0);
    for (j, c) in pair.grid.curves.iter().enumerate() {
        for m in 0..c.len() {
            ip += k[j][m].k1 * tp.dz[j][m].norm_sqr() * c.weights[m];
            iq += k[j][m].k1 * tq.dz[j][m].norm_sqr() * c.weights[m];
        }
    }
    let (ip, iq) = (ip / PI, iq / PI);
    let dxi = relative_section(family, t);
    let alpha = ip + 2.0 * pair.dh_xi_dz * dxi;
    let beta = -iq + 2.0 * pair.dmh_xi_dz * dxi;
    Ok(FirstVariation { alpha, beta, span: ip + iq, span_with_section_terms: alpha - beta })
}

/// Terms of the second variation of the span.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SecondVariation {
    /// `(1/π)∮ k₂(|p_z|² + |q_z|²) ds`.
    pub boundary: f64,
    /// `(4/π)∬ |∂²p/∂t̄∂z|² dxdy`.
    pub area_p: f64,
    /// `(4/π)∬ |∂²q/∂t̄∂z|² dxdy`.
    pub area_q: f64,
    pub total: f64,
}

/// `∬ |∂f/∂z|² dxdy` for `f = A + iB` harmonic, from boundary traces:
/// `¼(∮ A ∂_n A + ∮ B ∂_n B + 2∮ A ∂_s B)`.
fn dirichlet_area(pair: &PrincipalPair, a: &crate::bie::BoundaryTrace, b: &crate::bie::BoundaryTrace) -> f64 {
    let g = &pair.grid;
    let aa = g.map_nodes(|j, m| a.value[j][m] * a.normal[j][m]);
    let bb = g.map_nodes(|j, m| b.value[j][m] * b.normal[j][m]);
    let ab = g.map_nodes(|j, m| a.value[j][m] * b.tangential[j][m]);
    0.25 * (g.integrate(&aa) + g.integrate(&bb) + 2.0 * g.integrate(&ab))
}

/// `t̄`-derivatives of the regular parts of `p` and of the conjugate `q*` in
/// the frame with `a(t)` at the origin, as harmonic functions `A + iB`.
/// Returned as the pair of complex traces `(ṗ, q̇*)`, each split into real
/// and imaginary fields.
pub struct TbarDerivatives {
    pub p: (crate::bie::HarmonicField, crate::bie::HarmonicField),
    pub q_conj: (crate::bie::HarmonicField, crate::bie::HarmonicField),
}

/// Solve for the `t̄`-derivatives by Hadamard's boundary rule: on `∂R(t)`,
/// `∂_t̄ u = conj(k₁)/2 · ∂_n u` up to a per-curve constant, for `u = p` and
/// for `u = q*` (where `∂_n q* = -∂_s q`). The moving zero point contributes
/// `-∂_t̄ log|z - b|` and `-∂_t̄ arg(z - b)`, which are antiholomorphic in
/// `z` and drop out of `∂/∂z`.
pub fn tbar_derivatives(family: &DomainFamily, pair: &PrincipalPair, t: C64) -> Result<TbarDerivatives> {
    let k = translated_k(family, pair, t)?;
    let (tp, tq) = (pair.p.boundary_trace(), pair.q.boundary_trace());
    let dxi = relative_section(family, t).conj();
    let g = &pair.grid;
    let b = pair.b();
    let gp = g.map_nodes(|j, m| {
        let zb = (g.curves[j].z[m] - b).conj();
        0.5 * k[j][m].k1.conj() * tp.normal[j][m] + dxi / (2.0 * zb)
    });
    let gq = g.map_nodes(|j, m| {
        let zb = (g.curves[j].z[m] - b).conj();
        -0.5 * k[j][m].k1.conj() * tq.tangential[j][m] - dxi / (2.0 * C64::i() * zb)
    });
    let solver = pair.modified_dirichlet();
    let split = |data: &Vec<Vec<C64>>| -> Result<_> {
        let re: Vec<Vec<f64>> = data.iter().map(|r| r.iter().map(|v| v.re).collect()).collect();
        let im: Vec<Vec<f64>> = data.iter().map(|r| r.iter().map(|v| v.im).collect()).collect();
        Ok((solver.solve(&re)?, solver.solve(&im)?))
    };
    Ok(TbarDerivatives { p: split(&gp)?, q_conj: split(&gq)? })
}

impl TbarDerivatives {
    /// `∂²p/∂t̄∂z` at an interior point.
    pub fn p_dz(&self, z: C64) -> C64 {
        self.p.0.gradient_unchecked(z) + C64::i() * self.p.1.gradient_unchecked(z)
    }

    /// `∂²q*/∂t̄∂z`, equal in modulus to `∂²q/∂t̄∂z`.
    pub fn q_conj_dz(&self, z: C64) -> C64 {
        self.q_conj.0.gradient_unchecked(z) + C64::i() * self.q_conj.1.gradient_unchecked(z)
    }
}

pub fn second_variation_span(family: &DomainFamily, t: C64, n: usize) -> Result<SecondVariation> {
    let pair = compute_principal_pair(&family.domain_at(t)?, n)?;
    second_variation_on(family, &pair, t)
}

pub fn second_variation_on(family: &DomainFamily, pair: &PrincipalPair, t: C64) -> Result<SecondVariation> {
    let k = translated_k(family, pair, t)?;
    let (tp, tq) = (pair.p.boundary_trace(), pair.q.boundary_trace());
    let g = &pair.grid;
    let integrand = g.map_nodes(|j, m| k[j][m].k2 * (tp.dz[j][m].norm_sqr() + tq.dz[j][m].norm_sqr()));
    let boundary = g.integrate(&integrand) / PI;
    let d = tbar_derivatives(family, pair, t)?;
    let area = |f: &(crate::bie::HarmonicField, crate::bie::HarmonicField)| {
        4.0 / PI * dirichlet_area(pair, &f.0.boundary_trace(), &f.1.boundary_trace())
    };
    let (area_p, area_q) = (area(&d.p), area(&d.q_conj));
    Ok(SecondVariation { boundary, area_p, area_q, total: boundary + area_p + area_q })
}

pub const DEFAULT_HT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    /// `∂/∂t`.
    Dt,
    /// `∂²/∂t∂t̄`.
    Laplacian,
}

/// Value of a scalar quantity on `R(t)`.
pub fn quantity_at(family: &DomainFamily, t: C64, q: Quantity, n: usize) -> Result<f64> {
    let d = family.domain_at(t)?;
    if q == Quantity::LogCoshDistance {
        return Ok(poincare_distance(&d, n)?.cosh().ln());
    }
    let pair = compute_principal_pair(&d, n)?;
    Ok(match q {
        Quantity::Alpha => pair.alpha,
        Quantity::Beta => pair.beta,
        _ => pair.span(),
    })
}

fn check_stencil(family: &DomainFamily, t: C64, h: f64) -> Result<()> {
    if t.norm() + h >= family.radius {
        return Err(Error::StencilOutOfDisk);
    }
    Ok(())
}

/// Stencil derivative of several quantities at once. `eval` maps a parameter
/// to the vector of quantities. Central differences at `h` and `h/2` are
/// combined by one Richardson step.
pub fn fd_multi(
    family: &DomainFamily,
    t: C64,
    order: FdOrder,
    h: f64,
    eval: &(dyn Fn(C64) -> Result<Vec<f64>> + Sync),
) -> Result<Vec<C64>> {
    check_stencil(family, t, h)?;
    let center = if order == FdOrder::Laplacian { Some(eval(t)?) } else { None };
    let one = |h: f64| -> Result<Vec<C64>> {
        let [xp, xm, yp, ym] = [C64::new(h, 0.0), C64::new(-h, 0.0), C64::new(0.0, h), C64::new(0.0, -h)]
            .map(|d| eval(t + d));
        let (xp, xm, yp, ym) = (xp?, xm?, yp?, ym?);
        Ok((0..xp.len())
            .map(|i| match order {
                FdOrder::Dt => {
                    let dx = (xp[i] - xm[i]) / (2.0 * h);
                    let dy = (yp[i] - ym[i]) / (2.0 * h);
                    0.5 * C64::new(dx, -dy)
                }
                FdOrder::Laplacian => {
                    let c = center.as_ref().expect("center value")[i];
                    C64::new((xp[i] + xm[i] + yp[i] + ym[i] - 4.0 * c) / (4.0 * h * h), 0.0)
                }
            })
            .collect())
    };
    let (coarse, fine) = (one(h)?, one(0.5 * h)?);
    Ok(coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect())
}

/// Finite-difference `∂q/∂t` or `∂²q/∂t∂t̄` at `t` with step `h`.
pub fn fd_derivative(family: &DomainFamily, t: C64, q: Quantity, order: FdOrder, h: f64, n: usize) -> Result<C64> {
    let eval = |s: C64| quantity_at(family, s, q, n).map(|v| vec![v]);
    Ok(fd_multi(family, t, order, h, &eval)?[0])
}

/// `∂²p/∂t̄∂z` and `∂²q/∂t̄∂z` at interior points by central differences of
/// the interior gradients across the `t`-stencil, in the original frame.
pub fn dbar_gradient_fd(
    family: &DomainFamily,
    t: C64,
    points: &[C64],
    h: f64,
    n: usize,
) -> Result<Vec<(C64, C64)>> {
    check_stencil(family, t, h)?;
    let grads = |s: C64| -> Result<Vec<(C64, C64)>> {
        let pair = compute_principal_pair(&family.domain_at(s)?, n)?;
        Ok(points.iter().map(|&z| (pair.p.gradient_unchecked(z), pair.q.gradient_unchecked(z))).collect())
    };
    let xp = grads(t + h)?;
    let xm = grads(t - h)?;
    let yp = grads(t + C64::new(0.0, h))?;
    let ym = grads(t - C64::new(0.0, h))?;
    let d = |f: fn(&(C64, C64)) -> C64, i: usize| {
        let dx = (f(&xp[i]) - f(&xm[i])) / (2.0 * h);
        let dy = (f(&yp[i]) - f(&ym[i])) / (2.0 * h);
        0.5 * (dx + C64::i() * dy)
    };
    Ok((0..points.len()).map(|i| (d(|v| v.0, i), d(|v| v.1, i))).collect())
}
