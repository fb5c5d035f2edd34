//! Harmonic span, Poincaré distance, the S-function and exhaustions.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bie::green_function;
use crate::domain::{BoundaryGrid, DomainFile, MarkedDomain};
use crate::error::{Error, Result};
use crate::principal::{compute_principal_pair, e_log_area, TOO_CLOSE_SPACINGS};

#[derive(Debug, Clone, Serialize)]
pub struct SpanResult {
    pub span: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `(2/π) E_log(H)`, an independent route to the same number.
    pub span_from_area: f64,
    pub fingerprint: String,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// Stable hash of the domain description, for labelling results.
pub fn fingerprint(domain: &MarkedDomain) -> String {
    let text = serde_json::to_string(&DomainFile::from_domain(domain)).unwrap_or_default();
    // FNV-1a; std's hasher is not stable across releases.
    let h = text.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    format!("{h:016x}")
}

pub fn harmonic_span(domain: &MarkedDomain, n: usize) -> Result<SpanResult> {
    let pair = compute_principal_pair(domain, n)?;
    Ok(SpanResult {
        span: pair.span(),
        alpha: pair.alpha,
        beta: pair.beta,
        span_from_area: 2.0 / PI * e_log_area(&pair),
        fingerprint: fingerprint(domain),
        a: [domain.a().re, domain.a().im],
        b: [domain.b().re, domain.b().im],
    })
}

/// Poincaré distance between the marked points of a simply connected
/// domain, normalized as `d = ½ log((1+ρ)/(1-ρ))` with `ρ = exp(-g_a(b))`.
/// With this normalization `s = 4 log cosh d`.
pub fn poincare_distance(domain: &MarkedDomain, n: usize) -> Result<f64> {
    if domain.connectivity() != 1 {
        return Err(Error::NotSimplyConnected(domain.connectivity()));
    }
    let grid = Arc::new(BoundaryGrid::new(domain, n)?);
    let g = green_function(&grid, domain.a())?;
    let rho = (-g.value_unchecked(domain.b())).exp();
    Ok(0.5 * ((1.0 + rho) / (1.0 - rho)).ln())
}

/// `|s - 4 log cosh d|`.
pub fn check_span_distance_identity(domain: &MarkedDomain, n: usize) -> Result<f64> {
    let d = poincare_distance(domain, n)?;
    let s = harmonic_span(domain, n)?.span;
    Ok((s - 4.0 * d.cosh().ln()).abs())
}

#[derive(Debug, Clone, Serialize)]
pub struct SFunctionPoint {
    pub eta: [f64; 2],
    pub span: Option<f64>,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SFunctionGrid {
    pub xi: [f64; 2],
    pub points: Vec<SFunctionPoint>,
}

/// `s_R(ξ, η)` over a list of `η`. The diagonal is 0 by definition; points
/// inside the too-close band are reported missing.
pub fn s_function_grid(domain: &MarkedDomain, xi: C64, etas: &[C64], n: usize) -> SFunctionGrid {
    let band = TOO_CLOSE_SPACINGS * domain.spacing(n);
    let points = etas
        .par_iter()
        .map(|&eta| {
            let (span, status) = if eta == xi {
                (Some(0.0), "diagonal".to_string())
            } else if (eta - xi).norm() < band {
                (None, "too_close".to_string())
            } else {
                match domain.with_points(xi, eta).and_then(|d| compute_principal_pair(&d, n)) {
                    Ok(pair) => (Some(pair.span()), "ok".to_string()),
                    Err(e) => (None, status_label(&e).to_string()),
                }
            };
            SFunctionPoint { eta: [eta.re, eta.im], span, status }
        })
        .collect();
    SFunctionGrid { xi: [xi.re, xi.im], points }
}

/// Short machine-readable label for an error, used in CSV status columns.
pub fn status_label(e: &Error) -> &'static str {
    match e {
        Error::MarkedPointsTooClose { .. } => "too_close",
        Error::SolveFailure { .. } => "solve_failure",
        Error::NearBoundary { .. } => "near_boundary",
        Error::OutsideDomain { .. } => "outside",
        Error::InvalidDomain(_) => "invalid_domain",
        Error::StencilOutOfDisk => "stencil_out_of_disk",
        Error::InconsistentFamily(_) => "inconsistent_family",
        Error::BoundaryNotSmooth(_) => "boundary_not_smooth",
        _ => "error",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionReport {
    pub spans: Vec<f64>,
    /// `s_{n+1} ≤ s_n + 1e-8` for every step.
    pub monotone: bool,
    pub strictly_decreasing: bool,
    /// `s_last - s(limit)` when a limit domain is given.
    pub gap: Option<f64>,
}

/// Spans along a nested sequence `D_1 ⊂ D_2 ⊂ ...`, all with the same marked
/// points.
pub fn exhaustion_sequence(
    domains: &[MarkedDomain],
    limit: Option<&MarkedDomain>,
    n: usize,
) -> Result<ExhaustionReport> {
    for (i, pair) in domains.windows(2).enumerate() {
        let nested = pair[0]
            .curves()
            .iter()
            .flat_map(|c| c.samples(64))
            .all(|z| pair[1].is_interior(z));
        if !nested {
            return Err(Error::NotNested(i));
        }
    }
    let spans: Vec<f64> = domains
        .par_iter()
        .map(|d| harmonic_span(d, n).map(|r| r.span))
        .collect::<Result<_>>()?;
    let monotone = spans.windows(2).all(|w| w[1] <= w[0] + 1e-8);
    let strictly_decreasing = spans.windows(2).all(|w| w[1] < w[0]);
    let gap = match (limit, spans.last()) {
        (Some(l), Some(last)) => Some(last - harmonic_span(l, n)?.span),
        _ => None,
    };
    Ok(ExhaustionReport { spans, monotone, strictly_decreasing, gap })
}
