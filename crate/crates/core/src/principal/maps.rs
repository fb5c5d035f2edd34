use num_complex::Complex64 as C64;

use super::pair::PrincipalPair;
use crate::bie::HarmonicField;
use crate::error::{Error, Result};
use crate::fourier;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlitKind {
    /// `P = exp(p + ip*)`.
    Circular,
    /// `Q = exp(q + iq*)`.
    Radial,
    /// `H = √(PQ)`.
    CombinedH,
}

/// Exponentiated holomorphic completion of a combination of principal
/// functions, normalized so that `W(z) - 1/(z-a)` is regular at `a`:
///
/// `W(z) = (z-b) / ((z-a)(a-b)) · exp(Σ w_i (F_i(z) - F_i(a)))`
///
/// where `F_i` are the Cauchy-integral completions of the regular parts.
#[derive(Debug, Clone)]
pub struct ConformalSlitMap {
    pub kind: SlitKind,
    a: C64,
    b: C64,
    parts: Vec<(f64, HarmonicField)>,
    offset: C64,
}

/// Values of `log W` and `d log W/dz` at the boundary nodes. The argument is
/// continued along each curve.
#[derive(Debug, Clone)]
pub struct BoundaryMapTrace {
    pub log_w: Vec<Vec<C64>>,
    pub dlog_w: Vec<Vec<C64>>,
}

impl ConformalSlitMap {
    fn new(pair: &PrincipalPair, kind: SlitKind) -> Self {
        let parts = match kind {
            SlitKind::Circular => vec![(1.0, pair.p.clone())],
            SlitKind::Radial => vec![(1.0, pair.q.clone())],
            SlitKind::CombinedH => vec![(0.5, pair.p.clone()), (0.5, pair.q.clone())],
        };
        let (a, b) = (pair.a(), pair.b());
        let offset = parts.iter().map(|(w, f)| *w * f.holo_unchecked(a)).sum::<C64>() + (a - b).ln();
        let mut map = Self { kind, a, b, parts, offset };
        map.offset += map.extra_logs().map(|(w, p, s)| w * s * (a - p).norm().ln()).sum::<f64>();
        map
    }

    /// Extra (hole) logarithms of the parts; zero for principal functions up
    /// to rounding, since neither has flux through any hole.
    fn extra_logs(&self) -> impl Iterator<Item = (f64, C64, f64)> + '_ {
        self.parts.iter().flat_map(move |(w, f)| {
            f.logs.iter().filter(move |(p, _)| *p != self.a && *p != self.b).map(move |&(p, s)| (*w, p, s))
        })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    /// `log W(z)` on the principal branch of the singular factor, without
    /// interior checks.
    pub fn log_unchecked(&self, z: C64) -> C64 {
        let holo: C64 = self.parts.iter().map(|(w, f)| *w * f.holo_unchecked(z)).sum();
        let extra: f64 = self.extra_logs().map(|(w, p, s)| w * s * (z - p).norm().ln()).sum();
        (z - self.b).ln() - (z - self.a).ln() + holo + extra - self.offset
    }

    pub fn eval_unchecked(&self, z: C64) -> C64 {
        self.log_unchecked(z).exp()
    }

    /// `W(z)`; errors inside the near-boundary band.
    pub fn eval(&self, z: C64) -> Result<C64> {
        self.parts[0].1.grid().require_interior(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// `W'(z)/W(z)` at an interior point.
    pub fn dlog_unchecked(&self, z: C64) -> C64 {
        let holo: C64 = self.parts.iter().map(|(w, f)| *w * f.holo_derivative_unchecked(z)).sum();
        let extra: C64 = self.extra_logs().map(|(w, p, s)| w * s / (z - p)).sum();
        1.0 / (z - self.b) - 1.0 / (z - self.a) + holo + extra
    }

    pub fn boundary_trace(&self) -> BoundaryMapTrace {
        let grid = self.parts[0].1.grid().clone();
        let mut log_w = grid.map_nodes(|_, _| C64::new(0.0, 0.0));
        let mut dlog_w = log_w.clone();
        for (w, f) in &self.parts {
            let holo = f.boundary_holo();
            let dholo = f.boundary_holo_derivative_from(&holo);
            for j in 0..grid.curves.len() {
                for m in 0..grid.n {
                    log_w[j][m] += *w * holo[j][m];
                    dlog_w[j][m] += *w * dholo[j][m];
                }
            }
        }
        let extra: Vec<(f64, C64, f64)> = self.extra_logs().collect();
        for (j, cg) in grid.curves.iter().enumerate() {
            for m in 0..grid.n {
                let z = cg.z[m];
                log_w[j][m] += (z - self.b).ln() - (z - self.a).ln() - self.offset
                    + extra.iter().map(|&(w, p, s)| w * s * (z - p).norm().ln()).sum::<f64>();
                dlog_w[j][m] += 1.0 / (z - self.b) - 1.0 / (z - self.a)
                    + extra.iter().map(|&(w, p, s)| w * s / (z - p)).sum::<C64>();
            }
            let args = fourier::unwrap(&log_w[j].iter().map(|l| l.im).collect::<Vec<_>>());
            for (l, arg) in log_w[j].iter_mut().zip(args) {
                l.im = arg;
            }
        }
        BoundaryMapTrace { log_w, dlog_w }
    }

    /// Residue at `a` estimated on circles of the given radii:
    /// `(1/2π) ∫ W(a + re^{iθ}) re^{iθ} dθ`.
    pub fn residues(&self, radii: &[f64], samples: usize) -> Vec<C64> {
        radii
            .iter()
            .map(|&r| {
                fourier::nodes(samples)
                    .into_iter()
                    .map(|t| {
                        let e = C64::from_polar(r, t);
                        self.eval_unchecked(self.a + e) * e
                    })
                    .sum::<C64>()
                    / samples as f64
            })
            .collect()
    }
}

pub fn build_slit_map(pair: &PrincipalPair, kind: SlitKind) -> ConformalSlitMap {
    ConformalSlitMap::new(pair, kind)
}

pub fn build_h(pair: &PrincipalPair) -> ConformalSlitMap {
    ConformalSlitMap::new(pair, SlitKind::CombinedH)
}

/// `F = (∂q/∂z)/(∂p/∂z)` at a point, regular at `a` and `b` through the
/// common factor `(z-a)(z-b)`.
pub fn eval_f(pair: &PrincipalPair, z: C64) -> Result<C64> {
    let num = pair.scaled_dz(&pair.q, z, pair.q.holo_derivative_unchecked(z));
    let den = pair.scaled_dz(&pair.p, z, pair.p.holo_derivative_unchecked(z));
    ratio(num, den, z)
}

fn ratio(num: C64, den: C64, z: C64) -> Result<C64> {
    if den.norm() <= 1e-14 * num.norm().max(1.0) {
        return Err(Error::PoleOfF { re: z.re, im: z.im });
    }
    Ok(num / den)
}

/// `F` at interior points; near-boundary points are rejected.
pub fn eval_f_points(pair: &PrincipalPair, points: &[C64]) -> Result<Vec<C64>> {
    points
        .iter()
        .map(|&z| {
            pair.grid.require_interior(z).or_else(|e| if z == pair.a() || z == pair.b() { Ok(()) } else { Err(e) })?;
            eval_f(pair, z)
        })
        .collect()
}

/// `F` at every boundary node.
pub fn eval_f_boundary(pair: &PrincipalPair) -> Result<Vec<Vec<C64>>> {
    let dp = pair.p.boundary_holo_derivative_from(&pair.p.boundary_holo());
    let dq = pair.q.boundary_holo_derivative_from(&pair.q.boundary_holo());
    let g = &pair.grid;
    (0..g.curves.len())
        .map(|j| {
            (0..g.n)
                .map(|m| {
                    let z = g.curves[j].z[m];
                    ratio(pair.scaled_dz(&pair.q, z, dq[j][m]), pair.scaled_dz(&pair.p, z, dp[j][m]), z)
                })
                .collect()
        })
        .collect()
}
