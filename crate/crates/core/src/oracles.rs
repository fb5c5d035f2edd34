//! Closed-form references: disk slit maps and constants, affine transport,
//! and the radially symmetric parameter families. Nothing here calls the
//! numerical pipeline.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

/// Disk `|z| < r` with pole at the origin and zero at `xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskCase {
    pub r: f64,
    pub xi: C64,
}

impl DiskCase {
    pub fn new(r: f64, xi: C64) -> Self {
        assert!(xi.norm() < r, "zero must lie inside the disk");
        Self { r, xi }
    }

    fn factor(&self, z: C64) -> C64 {
        1.0 - z * self.xi.conj() / (self.r * self.r)
    }

    fn base(&self, z: C64) -> C64 {
        (-1.0 / self.xi) * (z - self.xi) / z
    }

    /// Circular slit map.
    pub fn p(&self, z: C64) -> C64 {
        self.base(z) / self.factor(z)
    }

    /// Radial slit map.
    pub fn q(&self, z: C64) -> C64 {
        self.base(z) * self.factor(z)
    }

    /// `√(PQ) = 1/z - 1/ξ`.
    pub fn h(&self, z: C64) -> C64 {
        1.0 / z - 1.0 / self.xi
    }

    /// `|ξ|²/r²`.
    pub fn ratio(&self) -> f64 {
        self.xi.norm_sqr() / (self.r * self.r)
    }

    pub fn alpha(&self) -> f64 {
        -2.0 * self.xi.norm().ln() - (1.0 - self.ratio()).ln()
    }

    pub fn beta(&self) -> f64 {
        -2.0 * self.xi.norm().ln() + (1.0 - self.ratio()).ln()
    }

    pub fn span(&self) -> f64 {
        -2.0 * (1.0 - self.ratio()).ln()
    }

    /// `(α, β, s)`.
    pub fn constants(&self) -> (f64, f64, f64) {
        (self.alpha(), self.beta(), self.span())
    }

    /// Area of the complement of the image of `log H`, `(π/2) s`.
    pub fn e_log(&self) -> f64 {
        PI * (1.0 / (1.0 - self.ratio())).ln()
    }

    /// Poincaré distance between 0 and ξ with the `½ log((1+ρ)/(1-ρ))`
    /// normalization.
    pub fn poincare_distance(&self) -> f64 {
        let rho = self.xi.norm() / self.r;
        0.5 * ((1.0 + rho) / (1.0 - rho)).ln()
    }

    /// `∂p/∂z` of the principal function `p = log|P|`, i.e. `P'/(2P)`.
    pub fn p_dz(&self, z: C64) -> C64 {
        let c = self.xi.conj() / (self.r * self.r);
        0.5 * (1.0 / (z - self.xi) - 1.0 / z + c / (1.0 - c * z))
    }

    /// `∂q/∂z` of `q = log|Q|`.
    pub fn q_dz(&self, z: C64) -> C64 {
        let c = self.xi.conj() / (self.r * self.r);
        0.5 * (1.0 / (z - self.xi) - 1.0 / z - c / (1.0 - c * z))
    }
}

/// Predicted change of the constants under `z ↦ λz + c` applied to the
/// domain and both marked points: `α` and `β` drop by `2 log|λ|`, the span
/// is unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transport {
    pub lambda: C64,
    pub shift: C64,
}

impl Transport {
    pub fn new(lambda: C64, shift: C64) -> Self {
        assert!(lambda.norm() > 0.0, "λ must be nonzero");
        Self { lambda, shift }
    }

    pub fn point(&self, z: C64) -> C64 {
        self.lambda * z + self.shift
    }

    pub fn alpha(&self, alpha: f64) -> f64 {
        alpha - 2.0 * self.lambda.norm().ln()
    }

    pub fn beta(&self, beta: f64) -> f64 {
        beta - 2.0 * self.lambda.norm().ln()
    }

    pub fn span(&self, span: f64) -> f64 {
        span
    }
}

/// Span of concentric-disk configurations as a function of `u = |ξ|²/r²`.
pub fn radial_span(u: f64) -> f64 {
    -2.0 * (1.0 - u).ln()
}

/// Disks `|z| < e^{Re t}` with marked points 0 and `xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HartogsFamily {
    pub xi: f64,
}

impl HartogsFamily {
    fn u(&self, x: f64) -> f64 {
        self.xi * self.xi * (-2.0 * x).exp()
    }

    pub fn alpha(&self, x: f64) -> f64 {
        DiskCase::new(x.exp(), C64::new(self.xi, 0.0)).alpha()
    }

    pub fn beta(&self, x: f64) -> f64 {
        DiskCase::new(x.exp(), C64::new(self.xi, 0.0)).beta()
    }

    pub fn span(&self, x: f64) -> f64 {
        radial_span(self.u(x))
    }

    /// `∂α/∂t` at `t = x`.
    pub fn dalpha_dt(&self, x: f64) -> f64 {
        let u = self.u(x);
        -u / (1.0 - u)
    }

    /// `∂β/∂t` at `t = x`.
    pub fn dbeta_dt(&self, x: f64) -> f64 {
        let u = self.u(x);
        u / (1.0 - u)
    }

    /// `∂²s/∂t∂t̄`.
    pub fn span_laplacian(&self, x: f64) -> f64 {
        let u = self.u(x);
        2.0 * u / (1.0 - u).powi(2)
    }

    /// `∂²β/∂t∂t̄`.
    pub fn beta_laplacian(&self, x: f64) -> f64 {
        let u = self.u(x);
        -u / (1.0 - u).powi(2)
    }

    /// `log cosh d(t)` for the two sections.
    pub fn log_cosh_distance(&self, x: f64) -> f64 {
        DiskCase::new(x.exp(), C64::new(self.xi, 0.0)).poincare_distance().cosh().ln()
    }
}

/// Disks `|z|² < 1 + κ|t|²` with marked points 0 and `xi`; `κ = 1` is the
/// concave control family, `κ = -1` the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFamily {
    pub xi: f64,
    pub kappa: f64,
}

impl QuadraticFamily {
    pub fn span(&self, t: C64) -> f64 {
        radial_span(self.xi * self.xi / (1.0 + self.kappa * t.norm_sqr()))
    }

    /// `∂²s/∂t∂t̄` at `t = 0`.
    pub fn span_laplacian_at_origin(&self) -> f64 {
        let u = self.xi * self.xi;
        -2.0 * self.kappa * u / (1.0 - u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> DiskCase {
        DiskCase::new(1.0, C64::new(0.5, 0.0))
    }

    #[test]
    fn map_values() {
        let z = C64::new(-0.5, 0.0);
        assert_abs_diff_eq!(unit().p(z).re, -3.2, epsilon = 1e-14);
        assert_abs_diff_eq!(unit().q(z).re, -5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(unit().h(z).re, -4.0, epsilon = 1e-14);
        assert_eq!(unit().p(C64::new(0.5, 0.0)).norm(), 0.0);
    }

    #[test]
    fn product_identity() {
        let d = DiskCase::new(1.3, C64::new(0.2, -0.4));
        for k in 0..20 {
            let z = C64::from_polar(0.05 + 0.06 * k as f64, 0.7 * k as f64);
            let lhs = d.p(z) * d.q(z);
            assert_abs_diff_eq!((lhs - d.h(z) * d.h(z)).norm(), 0.0, epsilon = 1e-10 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn constants() {
        let (a, b, s) = unit().constants();
        assert_abs_diff_eq!(a, (16.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(b, 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(s, 2.0 * (4.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(DiskCase::new(2.0, C64::new(1.0, 0.0)).span(), s, epsilon = 1e-15);
        assert!(DiskCase::new(1.0, C64::new(1e-9, 0.0)).span() < 1e-15);
    }

    #[test]
    fn transport_matches_scaled_disk() {
        let t = Transport::new(C64::new(2.0, 0.0), C64::new(0.0, 0.0));
        let scaled = DiskCase::new(2.0, C64::new(1.0, 0.0));
        assert_abs_diff_eq!(t.alpha(unit().alpha()), scaled.alpha(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.beta(unit().beta()), scaled.beta(), epsilon = 1e-14);
        let id = Transport::new(C64::new(1.0, 0.0), C64::new(0.3, -2.0));
        assert_eq!(id.alpha(1.25), 1.25);
    }

    #[test]
    fn distance_identity_on_disk() {
        let d = unit().poincare_distance();
        assert_abs_diff_eq!(d, 0.5 * 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(4.0 * d.cosh().ln(), unit().span(), epsilon = 1e-14);
    }

    #[test]
    fn hartogs_derivatives_match_differences() {
        let f = HartogsFamily { xi: 0.25 };
        assert_abs_diff_eq!(f.dalpha_dt(0.0), -1.0 / 15.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.span_laplacian(0.0), 32.0 / 225.0, epsilon = 1e-15);
        let h = 1e-4;
        let fd = (f.alpha(h) - f.alpha(-h)) / (4.0 * h);
        assert_abs_diff_eq!(fd, f.dalpha_dt(0.0), epsilon = 1e-8);
        let lap = |g: &dyn Fn(f64) -> f64| (g(h) - 2.0 * g(0.0) + g(-h)) / (4.0 * h * h);
        assert_abs_diff_eq!(lap(&|x| f.span(x)), f.span_laplacian(0.0), epsilon = 1e-6);
        assert_abs_diff_eq!(lap(&|x| f.beta(x)), f.beta_laplacian(0.0), epsilon = 1e-6);
    }

    #[test]
    fn concave_laplacian() {
        let f = QuadraticFamily { xi: 0.25, kappa: 1.0 };
        assert_abs_diff_eq!(f.span_laplacian_at_origin(), -2.0 / 15.0, epsilon = 1e-15);
        let h = 1e-4;
        let fd = (f.span(C64::new(h, 0.0)) + f.span(C64::new(-h, 0.0)) + f.span(C64::new(0.0, h))
            + f.span(C64::new(0.0, -h))
            - 4.0 * f.span(C64::new(0.0, 0.0)))
            / (4.0 * h * h);
        assert_abs_diff_eq!(fd, -2.0 / 15.0, epsilon = 1e-6);
    }
}
