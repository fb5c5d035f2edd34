use num_complex::Complex64 as C64;

use super::curve::{polygons_cross, winding_polygon, Orientation, SmoothCurve};
use crate::error::{Error, Result};

/// Samples per curve used by the geometric validity checks.
const CHECK_SAMPLES: usize = 512;

/// Result of [`MarkedDomain::contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    NearBoundary,
}

/// Bounded domain with one outer curve, `ν - 1` holes and two marked points:
/// the pole `a` and the zero `b` of the slit maps.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedDomain {
    curves: Vec<SmoothCurve>,
    a: C64,
    b: C64,
}

impl MarkedDomain {
    pub fn new(outer: SmoothCurve, holes: Vec<SmoothCurve>, a: C64, b: C64) -> Result<Self> {
        if outer.orientation() != Orientation::Positive {
            return Err(Error::InvalidDomain("outer curve must be positively oriented".into()));
        }
        if holes.iter().any(|h| h.orientation() != Orientation::Negative) {
            return Err(Error::InvalidDomain("holes must be negatively oriented".into()));
        }
        let mut curves = vec![outer];
        curves.extend(holes);
        let samples: Vec<Vec<C64>> = curves.iter().map(|c| c.samples(CHECK_SAMPLES)).collect();
        for (j, pts) in samples.iter().enumerate().skip(1) {
            if pts.iter().any(|&p| winding_polygon(&samples[0], p) != 1) || polygons_cross(pts, &samples[0]) {
                return Err(Error::InvalidDomain(format!("hole {j} is not strictly inside the outer curve")));
            }
            for (k, other) in samples.iter().enumerate().skip(1) {
                if k != j
                    && (pts.iter().any(|&p| winding_polygon(other, p) != 0) || (k > j && polygons_cross(pts, other)))
                {
                    return Err(Error::InvalidDomain(format!("holes {j} and {k} overlap")));
                }
            }
        }
        let domain = Self { curves, a, b };
        for (name, p) in [("a", a), ("b", b)] {
            if !domain.is_interior(p) {
                return Err(Error::InvalidDomain(format!("marked point {name} is not interior")));
            }
        }
        if a == b {
            return Err(Error::MarkedPointsTooClose { distance: 0.0 });
        }
        Ok(domain)
    }

    /// Domain bounded by a single curve.
    pub fn simply_connected(outer: SmoothCurve, a: C64, b: C64) -> Result<Self> {
        Self::new(outer, Vec::new(), a, b)
    }

    pub fn disk(center: C64, radius: f64, a: C64, b: C64) -> Result<Self> {
        Self::simply_connected(SmoothCurve::circle(center, radius, Orientation::Positive)?, a, b)
    }

    pub fn curves(&self) -> &[SmoothCurve] {
        &self.curves
    }

    pub fn outer(&self) -> &SmoothCurve {
        &self.curves[0]
    }

    pub fn holes(&self) -> &[SmoothCurve] {
        &self.curves[1..]
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn connectivity(&self) -> usize {
        self.curves.len()
    }

    /// Same geometry with new marked points.
    pub fn with_points(&self, a: C64, b: C64) -> Result<Self> {
        Self::new(self.curves[0].clone(), self.curves[1..].to_vec(), a, b)
    }

    /// Image under `z ↦ λz + c` with the marked points transported.
    pub fn transformed(&self, lambda: C64, shift: C64) -> Result<Self> {
        let curves: Result<Vec<SmoothCurve>> = self.curves.iter().map(|c| c.transformed(lambda, shift)).collect();
        let mut curves = curves?;
        let outer = curves.remove(0);
        Self::new(outer, curves, lambda * self.a + shift, lambda * self.b + shift)
    }

    /// Winding-number membership test, ignoring the near-boundary band.
    pub fn is_interior(&self, p: C64) -> bool {
        let n = CHECK_SAMPLES.max(8 * self.curves.iter().map(|c| c.max_mode()).max().unwrap_or(0));
        self.curves[0].winding(p, n) == 1
            && self.curves[1..].iter().all(|h| h.winding(p, n) == 0)
            && self.distance_to_boundary(p) > 0.0
    }

    pub fn distance_to_boundary(&self, p: C64) -> f64 {
        self.curves
            .iter()
            .map(|c| c.distance(p, 4 * CHECK_SAMPLES))
            .fold(f64::INFINITY, f64::min)
    }

    /// Node spacing `2π max|z'| / N` of an `N`-node grid.
    pub fn spacing(&self, n: usize) -> f64 {
        let max_speed = self
            .curves
            .iter()
            .flat_map(|c| crate::fourier::nodes(CHECK_SAMPLES).into_iter().map(move |t| c.dz(t).norm()))
            .fold(0.0, f64::max);
        std::f64::consts::TAU * max_speed / n as f64
    }

    /// Classify `p` for a grid with `n` nodes per curve. Points within five
    /// node spacings of the boundary are `NearBoundary`.
    pub fn contains(&self, p: C64, n: usize) -> Location {
        let inside = {
            let n = CHECK_SAMPLES.max(8 * self.curves.iter().map(|c| c.max_mode()).max().unwrap_or(0));
            self.curves[0].winding(p, n) == 1 && self.curves[1..].iter().all(|h| h.winding(p, n) == 0)
        };
        if self.distance_to_boundary(p) < 5.0 * self.spacing(n) {
            Location::NearBoundary
        } else if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// A point strictly inside hole `j` (1-based curve index), as far from the
    /// hole's boundary as a coarse search finds.
    pub fn hole_center(&self, j: usize) -> C64 {
        let hole = &self.curves[j];
        let n = 64;
        let mut best = (f64::NEG_INFINITY, C64::new(0.0, 0.0));
        let mut candidates: Vec<C64> = hole.coeffs().iter().filter(|(k, _)| *k == 0).map(|&(_, c)| c).collect();
        let pts = hole.samples(n);
        let diameter = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| (p - q).norm()))
            .fold(0.0, f64::max);
        for (m, t) in crate::fourier::nodes(n).into_iter().enumerate() {
            let inward = C64::new(0.0, 1.0) * hole.dz(t) / hole.dz(t).norm();
            for f in [0.05, 0.1, 0.2, 0.3, 0.4, 0.5] {
                candidates.push(pts[m] + inward * (f * diameter));
            }
        }
        for c in candidates {
            if hole.winding(c, 256) == 1 {
                let d = hole.distance(c, 256);
                if d > best.0 {
                    best = (d, c);
                }
            }
        }
        best.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annulus() -> MarkedDomain {
        let outer = SmoothCurve::circle(C64::new(0.0, 0.0), 1.0, Orientation::Positive).unwrap();
        let hole = SmoothCurve::circle(C64::new(0.0, 0.0), 0.5, Orientation::Negative).unwrap();
        MarkedDomain::new(outer, vec![hole], C64::new(0.75, 0.0), C64::new(-0.75, 0.0)).unwrap()
    }

    #[test]
    fn disk_membership() {
        let d = MarkedDomain::disk(C64::new(0.0, 0.0), 1.0, C64::new(0.0, 0.0), C64::new(0.5, 0.0)).unwrap();
        assert_eq!(d.contains(C64::new(0.0, 0.0), 256), Location::Inside);
        assert_eq!(d.contains(C64::new(2.0, 0.0), 256), Location::Outside);
        assert_eq!(d.contains(C64::new(0.99, 0.0), 256), Location::NearBoundary);
    }

    #[test]
    fn hole_is_outside() {
        assert_eq!(annulus().contains(C64::new(0.25, 0.0), 256), Location::Outside);
        let c = annulus().hole_center(1);
        assert!(c.norm() < 0.5);
    }

    #[test]
    fn coincident_points() {
        let r = MarkedDomain::disk(C64::new(0.0, 0.0), 1.0, C64::new(0.1, 0.0), C64::new(0.1, 0.0));
        assert_eq!(r.unwrap_err().to_string(), "marked points coincide");
    }

    #[test]
    fn hole_outside_outer_rejected() {
        let outer = SmoothCurve::circle(C64::new(0.0, 0.0), 1.0, Orientation::Positive).unwrap();
        let hole = SmoothCurve::circle(C64::new(0.9, 0.0), 0.2, Orientation::Negative).unwrap();
        let r = MarkedDomain::new(outer, vec![hole], C64::new(0.0, 0.0), C64::new(0.3, 0.0));
        assert!(matches!(r, Err(Error::InvalidDomain(_))));
    }
}
