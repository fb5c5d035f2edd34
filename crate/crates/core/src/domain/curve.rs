use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation relative to the domain: positive keeps the domain on the left
/// of the counterclockwise parametrization (outer curve), negative marks a
/// hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

/// Closed analytic Jordan curve `z(θ) = Σ c_k e^{ikθ}`.
///
/// Coefficients are always stored so the parametrization runs
/// counterclockwise; [`Orientation`] only records which side the domain is on.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothCurve {
    coeffs: Vec<(i64, C64)>,
    orientation: Orientation,
}

impl SmoothCurve {
    pub fn new(coeffs: Vec<(i64, C64)>, orientation: Orientation) -> Result<Self> {
        if !coeffs.iter().any(|&(k, c)| k.abs() == 1 && c != C64::new(0.0, 0.0)) {
            return Err(Error::InvalidDomain(
                "curve needs a nonzero coefficient with |k| = 1".into(),
            ));
        }
        if coeffs.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidDomain("non-finite curve coefficient".into()));
        }
        let mut curve = Self { coeffs, orientation };
        let n = curve.validation_samples();
        curve.check_immersed(n)?;
        if curve.signed_area() < 0.0 {
            for (k, _) in curve.coeffs.iter_mut() {
                *k = -*k;
            }
        }
        curve.check_simple(n)?;
        Ok(curve)
    }

    pub fn circle(center: C64, radius: f64, orientation: Orientation) -> Result<Self> {
        Self::new(vec![(0, center), (1, C64::new(radius, 0.0))], orientation)
    }

    pub fn coeffs(&self) -> &[(i64, C64)] {
        &self.coeffs
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn max_mode(&self) -> usize {
        self.coeffs.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    fn validation_samples(&self) -> usize {
        256.max(8 * self.max_mode())
    }

    pub fn z(&self, theta: f64) -> C64 {
        self.coeffs.iter().map(|&(k, c)| c * C64::from_polar(1.0, k as f64 * theta)).sum()
    }

    pub fn dz(&self, theta: f64) -> C64 {
        self.coeffs
            .iter()
            .map(|&(k, c)| c * C64::new(0.0, k as f64) * C64::from_polar(1.0, k as f64 * theta))
            .sum()
    }

    pub fn ddz(&self, theta: f64) -> C64 {
        self.coeffs
            .iter()
            .map(|&(k, c)| c * (-(k * k) as f64) * C64::from_polar(1.0, k as f64 * theta))
            .sum()
    }

    /// Area enclosed by the parametrization, positive when counterclockwise.
    /// Exact for trigonometric curves: `π Σ k |c_k|²`.
    pub fn signed_area(&self) -> f64 {
        std::f64::consts::PI * self.coeffs.iter().map(|&(k, c)| k as f64 * c.norm_sqr()).sum::<f64>()
    }

    pub fn samples(&self, n: usize) -> Vec<C64> {
        crate::fourier::nodes(n).into_iter().map(|t| self.z(t)).collect()
    }

    /// Image of the curve under `z ↦ λz + c`.
    pub fn transformed(&self, lambda: C64, shift: C64) -> Result<Self> {
        let mut coeffs: Vec<(i64, C64)> = self.coeffs.iter().map(|&(k, c)| (k, lambda * c)).collect();
        match coeffs.iter_mut().find(|(k, _)| *k == 0) {
            Some((_, c0)) => *c0 += shift,
            None => coeffs.push((0, shift)),
        }
        Self::new(coeffs, self.orientation)
    }

    fn check_immersed(&self, n: usize) -> Result<()> {
        let speeds: Vec<f64> = crate::fourier::nodes(n).into_iter().map(|t| self.dz(t).norm()).collect();
        let max = speeds.iter().cloned().fold(0.0, f64::max);
        let min = speeds.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(min >= 1e-12 * max) || max == 0.0 {
            return Err(Error::DegenerateCurve { min, max });
        }
        Ok(())
    }

    fn check_simple(&self, n: usize) -> Result<()> {
        let pts = self.samples(n);
        if polygon_self_intersects(&pts) {
            return Err(Error::SelfIntersecting);
        }
        Ok(())
    }

    /// Winding number of the (counterclockwise) parametrization about `p`,
    /// from `n` samples.
    pub fn winding(&self, p: C64, n: usize) -> i64 {
        winding_polygon(&self.samples(n), p)
    }

    /// Distance from `p` to the curve: dense sampling followed by Newton on
    /// the squared distance.
    pub fn distance(&self, p: C64, n: usize) -> f64 {
        let th = crate::fourier::nodes(n);
        let (mut best, mut best_t) = (f64::INFINITY, 0.0);
        for &t in &th {
            let d = (self.z(t) - p).norm();
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let mut t = best_t;
        let h = std::f64::consts::TAU / n as f64;
        for _ in 0..8 {
            let (z, d1, d2) = (self.z(t) - p, self.dz(t), self.ddz(t));
            let g = (z.conj() * d1).re;
            let gp = d1.norm_sqr() + (z.conj() * d2).re;
            if gp <= 0.0 {
                break;
            }
            let step = (g / gp).clamp(-h, h);
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        best.min((self.z(t) - p).norm())
    }
}

pub(crate) fn winding_polygon(pts: &[C64], p: C64) -> i64 {
    let mut total = 0.0;
    let n = pts.len();
    for m in 0..n {
        let a = pts[m] - p;
        let b = pts[(m + 1) % n] - p;
        total += (b / a).arg();
    }
    (total / std::f64::consts::TAU).round() as i64
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(p1: C64, p2: C64, q1: C64, q2: C64) -> bool {
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Segment intersection test between all non-adjacent edges of a closed
/// polygon.
pub fn polygon_self_intersects(pts: &[C64]) -> bool {
    let n = pts.len();
    for i in 0..n {
        let (p1, p2) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(p1, p2, pts[j], pts[(j + 1) % n]) {
                return true;
            }
        }
    }
    false
}

/// True if two closed polygons have crossing edges.
pub fn polygons_cross(a: &[C64], b: &[C64]) -> bool {
    let (na, nb) = (a.len(), b.len());
    (0..na).any(|i| (0..nb).any(|j| segments_cross(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unit_circle() {
        let curve = SmoothCurve::new(vec![(1, c(1.0))], Orientation::Positive).unwrap();
        for t in crate::fourier::nodes(17) {
            assert_abs_diff_eq!(curve.z(t).norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn ellipse_semi_axes() {
        let e = SmoothCurve::new(vec![(1, c(1.0)), (-1, c(0.3))], Orientation::Positive).unwrap();
        assert_abs_diff_eq!(e.z(0.0).re, 1.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e.z(std::f64::consts::FRAC_PI_2).im, 0.7, epsilon = 1e-15);
    }

    #[test]
    fn looped_limacon_rejected() {
        let r = SmoothCurve::new(vec![(1, c(1.0)), (2, c(0.7))], Orientation::Positive);
        assert_eq!(r, Err(Error::SelfIntersecting));
    }

    #[test]
    fn clockwise_input_reversed() {
        let cw = SmoothCurve::new(vec![(-1, c(1.0))], Orientation::Negative).unwrap();
        assert!(cw.signed_area() > 0.0);
        assert_eq!(cw.winding(C64::new(0.0, 0.0), 64), 1);
    }

    #[test]
    fn degenerate_rejected() {
        // z = e^{iθ} + e^{-iθ}/1 collapses to a segment with vanishing speed.
        let r = SmoothCurve::new(vec![(1, c(1.0)), (-1, c(1.0))], Orientation::Positive);
        assert!(matches!(r, Err(Error::DegenerateCurve { .. })));
    }

    #[test]
    fn distance_to_circle() {
        let curve = SmoothCurve::circle(c(0.0), 1.0, Orientation::Positive).unwrap();
        assert_abs_diff_eq!(curve.distance(C64::new(0.3, 0.1), 64), 1.0 - 0.1f64.hypot(0.3), epsilon = 1e-13);
    }
}
