//! Second-order forward-mode jets over `(Re t, Im t, Re z, Im z)`.

use num_complex::Complex64 as C64;

/// Arithmetic shared by plain complex evaluation and jets. Values are
/// computed by the same operations in both, so a jet's value is bitwise
/// equal to plain evaluation.
pub trait Scalar: Clone {
    fn constant(c: C64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
}

fn powi_value(x: C64, n: i32) -> C64 {
    if n == 0 {
        C64::new(1.0, 0.0)
    } else {
        x.powi(n)
    }
}

impl Scalar for C64 {
    fn constant(c: C64) -> Self {
        c
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exp(&self) -> Self {
        C64::exp(*self)
    }
    fn ln(&self) -> Self {
        C64::ln(*self)
    }
    fn conj(&self) -> Self {
        C64::conj(self)
    }
    fn re(&self) -> Self {
        C64::new(self.re, 0.0)
    }
    fn im(&self) -> Self {
        C64::new(self.im, 0.0)
    }
    fn powi(&self, n: i32) -> Self {
        powi_value(*self, n)
    }
}

/// Value, gradient and Hessian of a complex-valued function of four real
/// variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: C64,
    pub g: [C64; 4],
    pub h: [[C64; 4]; 4],
}

const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

impl Jet {
    pub fn constant(v: C64) -> Self {
        Jet { v, g: [ZERO; 4], h: [[ZERO; 4]; 4] }
    }

    /// Seeds for `t`, `conj(t)`, `z`, `conj(z)`.
    pub fn variables(t: C64, z: C64) -> [Jet; 4] {
        let seed = |v: C64, g: [C64; 4]| Jet { v, g, h: [[ZERO; 4]; 4] };
        let one = C64::new(1.0, 0.0);
        [
            seed(t, [one, I, ZERO, ZERO]),
            seed(t.conj(), [one, -I, ZERO, ZERO]),
            seed(z, [ZERO, ZERO, one, I]),
            seed(z.conj(), [ZERO, ZERO, one, -I]),
        ]
    }

    /// Apply a scalar function given its value and first two derivatives at
    /// `self.v`.
    fn chain(&self, f: C64, df: C64, d2f: C64) -> Jet {
        let mut out = Jet::constant(f);
        for i in 0..4 {
            out.g[i] = df * self.g[i];
            for j in 0..4 {
                out.h[i][j] = df * self.h[i][j] + d2f * self.g[i] * self.g[j];
            }
        }
        out
    }

    fn map_linear(&self, v: C64, f: impl Fn(C64) -> C64) -> Jet {
        let mut out = Jet::constant(v);
        for i in 0..4 {
            out.g[i] = f(self.g[i]);
            for j in 0..4 {
                out.h[i][j] = f(self.h[i][j]);
            }
        }
        out
    }

    /// `∂/∂w = ½(∂_x - i∂_y)` for variable pair `k` (0 for t, 2 for z).
    fn d(&self, k: usize) -> C64 {
        0.5 * (self.g[k] - I * self.g[k + 1])
    }

    fn dbar(&self, k: usize) -> C64 {
        0.5 * (self.g[k] + I * self.g[k + 1])
    }

    /// `∂²/∂w_j ∂w̄_k` style mixed Wirtinger second derivative, with `bar_j`
    /// and `bar_k` choosing the conjugate operator for each slot.
    fn d2(&self, j: usize, bar_j: bool, k: usize, bar_k: bool) -> C64 {
        let cj = [C64::new(0.5, 0.0), if bar_j { 0.5 * I } else { -0.5 * I }];
        let ck = [C64::new(0.5, 0.0), if bar_k { 0.5 * I } else { -0.5 * I }];
        let mut s = ZERO;
        for (a, ca) in cj.iter().enumerate() {
            for (b, cb) in ck.iter().enumerate() {
                s += ca * cb * self.h[j + a][k + b];
            }
        }
        s
    }

    pub fn wirtinger(&self) -> Wirtinger {
        Wirtinger {
            value: self.v,
            t: self.d(0),
            tbar: self.dbar(0),
            z: self.d(2),
            zbar: self.dbar(2),
            t_tbar: self.d2(0, false, 0, true),
            tbar_z: self.d2(0, true, 2, false),
            t_zbar: self.d2(0, false, 2, true),
            z_zbar: self.d2(2, false, 2, true),
        }
    }
}

/// The Wirtinger derivatives needed for the Levi form.
#[derive(Debug, Clone, Copy)]
pub struct Wirtinger {
    pub value: C64,
    pub t: C64,
    pub tbar: C64,
    pub z: C64,
    pub zbar: C64,
    pub t_tbar: C64,
    pub tbar_z: C64,
    pub t_zbar: C64,
    pub z_zbar: C64,
}

impl Scalar for Jet {
    fn constant(c: C64) -> Self {
        Jet::constant(c)
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = Jet::constant(self.v + o.v);
        for i in 0..4 {
            out.g[i] = self.g[i] + o.g[i];
            for j in 0..4 {
                out.h[i][j] = self.h[i][j] + o.h[i][j];
            }
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        let mut out = Jet::constant(self.v - o.v);
        for i in 0..4 {
            out.g[i] = self.g[i] - o.g[i];
            for j in 0..4 {
                out.h[i][j] = self.h[i][j] - o.h[i][j];
            }
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Jet::constant(self.v * o.v);
        for i in 0..4 {
            out.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..4 {
                out.h[i][j] = self.h[i][j] * o.v
                    + self.v * o.h[i][j]
                    + self.g[i] * o.g[j]
                    + o.g[i] * self.g[j];
            }
        }
        out
    }

    fn div(&self, o: &Self) -> Self {
        let r = 1.0 / o.v;
        let mut out = self.mul(&o.chain(r, -r * r, 2.0 * r * r * r));
        out.v = self.v / o.v;
        out
    }

    fn neg(&self) -> Self {
        self.map_linear(-self.v, |x| -x)
    }

    fn exp(&self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    fn ln(&self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r)
    }

    fn conj(&self) -> Self {
        self.map_linear(self.v.conj(), |x| x.conj())
    }

    fn re(&self) -> Self {
        self.map_linear(C64::new(self.v.re, 0.0), |x| C64::new(x.re, 0.0))
    }

    fn im(&self) -> Self {
        self.map_linear(C64::new(self.v.im, 0.0), |x| C64::new(x.im, 0.0))
    }

    fn powi(&self, n: i32) -> Self {
        if n == 0 {
            return Jet::constant(C64::new(1.0, 0.0));
        }
        let x = self.v;
        let nf = n as f64;
        let d1 = nf * powi_value(x, n - 1);
        let d2 = if n == 1 { ZERO } else { nf * (nf - 1.0) * powi_value(x, n - 2) };
        self.chain(powi_value(x, n), d1, d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_give_unit_wirtinger_derivatives() {
        let [t, tb, z, zb] = Jet::variables(C64::new(0.3, 0.1), C64::new(-0.2, 0.5));
        assert_eq!(t.wirtinger().t, C64::new(1.0, 0.0));
        assert_eq!(t.wirtinger().tbar, ZERO);
        assert_eq!(tb.wirtinger().tbar, C64::new(1.0, 0.0));
        assert_eq!(z.wirtinger().z, C64::new(1.0, 0.0));
        assert_eq!(zb.wirtinger().zbar, C64::new(1.0, 0.0));
        // |z|² has ∂z∂z̄ = 1.
        let w = z.mul(&zb).wirtinger();
        assert!((w.z_zbar - 1.0).norm() < 1e-15);
        assert!((w.z - C64::new(-0.2, -0.5)).norm() < 1e-15);
        let w = t.mul(&zb).wirtinger();
        assert!((w.tbar_z).norm() < 1e-15);
        let w = tb.mul(&z).wirtinger();
        assert!((w.tbar_z - 1.0).norm() < 1e-15);
    }
}
