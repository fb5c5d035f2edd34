use num_complex::Complex64 as C64;
use serde::Serialize;

use super::maps::build_h;
use super::pair::PrincipalPair;
use crate::domain::polygon_self_intersects;
use crate::fourier;

/// `E_log(H) = -∮ h dh*` with `h = ½(p + q)`. Since `∂q/∂n = 0` and `p`
/// is constant with zero flux on every curve, this reduces to
/// `-¼ ∮ q ∂p/∂n ds`.
pub fn e_log_area(pair: &PrincipalPair) -> f64 {
    let tp = pair.p.boundary_trace();
    let tq = pair.q.boundary_trace();
    let integrand: Vec<Vec<f64>> = tq
        .value
        .iter()
        .zip(&tp.normal)
        .map(|(q, dp)| q.iter().zip(dp).map(|(q, d)| q * d).collect())
        .collect();
    -0.25 * pair.grid.integrate(&integrand)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub curve: usize,
    pub min_curvature: f64,
    pub max_curvature: f64,
    /// All node curvatures share one strict sign.
    pub one_signed: bool,
    /// The sampled image curve `-H(C_j)` has no crossing edges.
    pub simple: bool,
}

/// Signed curvature of `τ = log H` along `C_j`, traversed with the domain on
/// the left, from spectrally differentiated boundary traces. The curvature
/// of `-τ` is the same.
pub fn convexity_check(pair: &PrincipalPair, j: usize) -> ConvexityReport {
    let h = build_h(pair).boundary_trace();
    let cg = &pair.grid.curves[j];
    let d1: Vec<C64> = h.dlog_w[j].iter().zip(&cg.dz).map(|(d, dz)| d * dz * cg.sign).collect();
    let d2: Vec<C64> = fourier::derivative(&d1).into_iter().map(|d| d * cg.sign).collect();
    let curv: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| (a.conj() * b).im / a.norm().powi(3)).collect();
    let min = curv.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = curv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let image: Vec<C64> = h.log_w[j].iter().map(|l| -l.exp()).collect();
    ConvexityReport {
        curve: j,
        min_curvature: min,
        max_curvature: max,
        one_signed: max < 0.0 || min > 0.0,
        simple: !polygon_self_intersects(&image),
    }
}
