use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::family::DomainFamily;
use super::formulas::{fd_multi, min_k2, FdOrder};
use crate::domain::MarkedDomain;
use crate::error::{Error, Result};
use crate::principal::{compute_principal_pair, slit_data, TOO_CLOSE_SPACINGS};
use crate::span::{poincare_distance, status_label};

/// Square `n × n` grid of parameters `center + radius·(x + iy)`, `x, y ∈
/// [-1, 1]`, in row-major order (`Im t` outer, `Re t` inner).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TGrid {
    pub center: [f64; 2],
    pub radius: f64,
    pub n: usize,
}

impl TGrid {
    pub fn new(center: C64, radius: f64, n: usize) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::Input(format!("grid size {n} must be odd")));
        }
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::Input("grid radius must be non-negative".into()));
        }
        Ok(TGrid { center: [center.re, center.im], radius, n })
    }

    pub fn center(&self) -> C64 {
        C64::new(self.center[0], self.center[1])
    }

    pub fn points(&self) -> Vec<C64> {
        let c = self.center();
        let step = |k: usize| if self.n == 1 { 0.0 } else { -1.0 + 2.0 * k as f64 / (self.n - 1) as f64 };
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |k| (k, i)))
            .map(|(k, i)| c + self.radius * C64::new(step(k), step(i)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub t: [f64; 2],
    pub span: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lap_span: f64,
    pub lap_beta: f64,
    pub min_k2: f64,
    pub status: String,
}

impl ScanRow {
    fn failed(t: C64, e: &Error) -> Self {
        ScanRow {
            t: [t.re, t.im],
            span: f64::NAN,
            alpha: f64::NAN,
            beta: f64::NAN,
            lap_span: f64::NAN,
            lap_beta: f64::NAN,
            min_k2: f64::NAN,
            status: status_label(e).to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VariationReport {
    pub grid: TGrid,
    pub rows: Vec<ScanRow>,
    pub min_k2: f64,
    pub min_lap_span: f64,
    pub max_lap_beta: f64,
    pub tol: f64,
    pub pseudoconvex: bool,
    pub span_subharmonic: bool,
    pub beta_superharmonic: bool,
    pub failures: usize,
}

/// Levi curvatures at or above this count as pseudoconvex.
pub const K2_TOL: f64 = 1e-8;

fn ok_rows<'a>(rows: &'a [ScanRow]) -> impl Iterator<Item = &'a ScanRow> {
    rows.iter().filter(|r| r.status == "ok")
}

/// Span, α, β and their discrete Laplacians over a parameter grid, with the
/// minimum Levi curvature at each parameter. Failures are recorded per row.
pub fn subharmonicity_scan(family: &DomainFamily, grid: &TGrid, h: f64, n: usize) -> VariationReport {
    let rows: Vec<ScanRow> = grid
        .points()
        .par_iter()
        .map(|&t| scan_point(family, t, h, n).unwrap_or_else(|e| ScanRow::failed(t, &e)))
        .collect();
    let min_k2 = ok_rows(&rows).map(|r| r.min_k2).fold(f64::INFINITY, f64::min);
    let min_lap_span = ok_rows(&rows).map(|r| r.lap_span).fold(f64::INFINITY, f64::min);
    let max_lap_beta = ok_rows(&rows).map(|r| r.lap_beta).fold(f64::NEG_INFINITY, f64::max);
    let max_span = ok_rows(&rows).map(|r| r.span.abs()).fold(0.0, f64::max);
    let tol = 1e-5 * max_span.max(1.0);
    let failures = rows.len() - ok_rows(&rows).count();
    VariationReport {
        grid: *grid,
        min_k2,
        min_lap_span,
        max_lap_beta,
        tol,
        pseudoconvex: min_k2 >= -K2_TOL,
        span_subharmonic: min_lap_span >= -tol,
        beta_superharmonic: max_lap_beta <= tol,
        failures,
        rows,
    }
}

fn scan_point(family: &DomainFamily, t: C64, h: f64, n: usize) -> Result<ScanRow> {
    let pair = compute_principal_pair(&family.domain_at(t)?, n)?;
    let k2 = min_k2(family, &pair, t)?;
    let eval = |s: C64| -> Result<Vec<f64>> {
        if s == t {
            return Ok(vec![pair.span(), pair.beta]);
        }
        let p = compute_principal_pair(&family.domain_at(s)?, n)?;
        Ok(vec![p.span(), p.beta])
    };
    let lap = fd_multi(family, t, FdOrder::Laplacian, h, &eval)?;
    Ok(ScanRow {
        t: [t.re, t.im],
        span: pair.span(),
        alpha: pair.alpha,
        beta: pair.beta,
        lap_span: lap[0].re,
        lap_beta: lap[1].re,
        min_k2: k2,
        status: "ok".into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LogCoshRow {
    pub t: [f64; 2],
    pub delta: f64,
    pub lap_delta: f64,
    pub span: f64,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogCoshReport {
    pub rows: Vec<LogCoshRow>,
    pub min_lap_delta: f64,
    /// `max |δ - s/4|`.
    pub max_identity_residual: f64,
    pub subharmonic: bool,
}

/// `δ(t) = log cosh d(t)` for the Poincaré distance between the sections,
/// with its discrete Laplacian.
pub fn logcosh_subharmonicity(family: &DomainFamily, grid: &TGrid, h: f64, n: usize) -> Result<LogCoshReport> {
    if family.connectivity() != 1 {
        return Err(Error::NotSimplyConnected(family.connectivity()));
    }
    let delta = |s: C64| -> Result<f64> { Ok(poincare_distance(&family.domain_at(s)?, n)?.cosh().ln()) };
    let rows: Vec<LogCoshRow> = grid
        .points()
        .par_iter()
        .map(|&t| {
            let row = || -> Result<LogCoshRow> {
                let d = delta(t)?;
                let span = compute_principal_pair(&family.domain_at(t)?, n)?.span();
                let lap = fd_multi(family, t, FdOrder::Laplacian, h, &|s| delta(s).map(|v| vec![v]))?[0].re;
                Ok(LogCoshRow { t: [t.re, t.im], delta: d, lap_delta: lap, span, status: "ok".into() })
            };
            row().unwrap_or_else(|e| LogCoshRow {
                t: [t.re, t.im],
                delta: f64::NAN,
                lap_delta: f64::NAN,
                span: f64::NAN,
                status: status_label(&e).into(),
            })
        })
        .collect();
    let ok = rows.iter().filter(|r| r.status == "ok");
    let min_lap_delta = ok.clone().map(|r| r.lap_delta).fold(f64::INFINITY, f64::min);
    let max_identity_residual = ok.map(|r| (r.delta - r.span / 4.0).abs()).fold(0.0, f64::max);
    Ok(LogCoshReport { subharmonic: min_lap_delta >= -1e-6, rows, min_lap_delta, max_identity_residual })
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    /// `max_{j,t} |Ã_j(t) - Ã_j(t₀)|` with `Ã_j = A_j/A_1`, `A_j = r_j e^{iθ₁_j}`.
    pub max_slit_deviation: f64,
    /// `max_t |s(t) - s(t₀)|`.
    pub span_deviation: f64,
    pub trivial_candidate: bool,
}

/// Constancy of the span and of the normalized circular slit data across
/// the grid, measured against the grid center `t₀`.
pub fn rigidity_check(family: &DomainFamily, grid: &TGrid, n: usize) -> Result<RigidityReport> {
    let sample = |t: C64| -> Result<(f64, Vec<C64>)> {
        let pair = compute_principal_pair(&family.domain_at(t)?, n)?;
        let data = slit_data(&pair)?;
        let a: Vec<C64> = data.circular.iter().map(|c| C64::from_polar(c.radius, c.theta1)).collect();
        let first = a[0];
        Ok((pair.span(), a.into_iter().map(|x| x / first).collect()))
    };
    let (s0, a0) = sample(grid.center())?;
    let samples: Vec<(f64, Vec<C64>)> = grid.points().par_iter().map(|&t| sample(t)).collect::<Result<_>>()?;
    let mut slit = 0.0f64;
    let mut span = 0.0f64;
    for (s, a) in &samples {
        span = span.max((s - s0).abs());
        for (x, y) in a.iter().zip(&a0) {
            slit = slit.max((x - y).norm());
        }
    }
    Ok(RigidityReport { max_slit_deviation: slit, span_deviation: span, trivial_candidate: slit <= 1e-5 && span <= 1e-5 })
}

#[derive(Debug, Clone, Serialize)]
pub struct PshRow {
    pub u: [f64; 2],
    pub span: f64,
    pub laplacian: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PshReport {
    pub rows: Vec<PshRow>,
    pub min_laplacian: f64,
    pub strictly_subharmonic: bool,
}

/// Strictness threshold for the restriction of the S-function to a line.
pub const PSH_STRICT_TOL: f64 = 1e-8;

/// Restrict `s(ξ, η)` to the complex line `(ξ₀ + dξ·u, η₀ + dη·u)` and take
/// the discrete Laplacian in `u` over a grid. Refuses lines that come
/// within the too-close band of the diagonal anywhere on the grid stencil.
pub fn sfunction_psh_check(
    domain: &MarkedDomain,
    base: (C64, C64),
    dir: (C64, C64),
    grid: &TGrid,
    h: f64,
    n: usize,
) -> Result<PshReport> {
    let band = TOO_CLOSE_SPACINGS * domain.spacing(n);
    let at = |u: C64| (base.0 + dir.0 * u, base.1 + dir.1 * u);
    // |η - ξ| is affine in u; sample the grid square plus stencil margin.
    let reach = grid.radius + h;
    let m = 64;
    for i in 0..=m {
        for k in 0..=m {
            let u = grid.center() + reach * C64::new(-1.0 + 2.0 * k as f64 / m as f64, -1.0 + 2.0 * i as f64 / m as f64);
            let (x, y) = at(u);
            if (x - y).norm() < band {
                return Err(Error::LineHitsDiagonal);
            }
        }
    }
    let span = |u: C64| -> Result<f64> {
        let (x, y) = at(u);
        Ok(compute_principal_pair(&domain.with_points(x, y)?, n)?.span())
    };
    let rows: Vec<PshRow> = grid
        .points()
        .par_iter()
        .map(|&u| -> Result<PshRow> {
            let c = span(u)?;
            let lap = |h: f64| -> Result<f64> {
                let sum = span(u + h)? + span(u - h)? + span(u + C64::new(0.0, h))? + span(u - C64::new(0.0, h))?;
                Ok((sum - 4.0 * c) / (4.0 * h * h))
            };
            let (coarse, fine) = (lap(h)?, lap(0.5 * h)?);
            Ok(PshRow { u: [u.re, u.im], span: c, laplacian: (4.0 * fine - coarse) / 3.0 })
        })
        .collect::<Result<_>>()?;
    let min_laplacian = rows.iter().map(|r| r.laplacian).fold(f64::INFINITY, f64::min);
    Ok(PshReport { strictly_subharmonic: min_laplacian >= PSH_STRICT_TOL, rows, min_laplacian })
}
