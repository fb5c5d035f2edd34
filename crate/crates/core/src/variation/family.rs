use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::expr::Expr;
use crate::domain::{MarkedDomain, Orientation, SmoothCurve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyCurveFile {
    /// `[k, re, im]` with `re`, `im` expressions in `t`.
    pub coeffs_t: Vec<(i64, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hole: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    pub phi: String,
    pub curves: Vec<FamilyCurveFile>,
    pub a: String,
    pub b: String,
    pub radius: f64,
}

#[derive(Debug, Clone)]
struct FamilyCurve {
    coeffs: Vec<(i64, Expr, Expr)>,
}

/// Domains `R(t)` for `|t| < radius`, given both by boundary
/// parametrizations and by a defining function `φ(t, z)` that is negative
/// inside.
#[derive(Debug, Clone)]
pub struct DomainFamily {
    pub phi: Expr,
    /// `φ(t, w + a(t))`: the defining function in the frame where `a` sits at
    /// the origin.
    pub phi_translated: Expr,
    curves: Vec<FamilyCurve>,
    pub a: Expr,
    pub b: Expr,
    pub radius: f64,
}

/// Built-in families, by name.
pub const SHIPPED: [(&str, &str); 6] = [
    ("hartogs", include_str!("../../families/hartogs.json")),
    ("product", include_str!("../../families/product.json")),
    ("concave", include_str!("../../families/concave.json")),
    ("ball", include_str!("../../families/ball.json")),
    ("translation", include_str!("../../families/translation.json")),
    ("moving_hole", include_str!("../../families/moving_hole.json")),
];

fn uses_z(e: &Expr) -> bool {
    use Expr::*;
    match e {
        Z | ZBar => true,
        Const(_) | T | TBar => false,
        Neg(a) | Exp(a) | Log(a) | Abs2(a) | Re(a) | Im(a) | Conj(a) | Pow(a, _) => uses_z(a),
        Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => uses_z(a) || uses_z(b),
    }
}

impl DomainFamily {
    pub fn from_file(file: &FamilyFile) -> Result<Self> {
        let parse_field = |what: &str, s: &str| {
            Expr::parse(s).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("{what}: {msg}") },
                other => other,
            })
        };
        if file.curves.is_empty() {
            return Err(Error::Input("family needs at least one curve".into()));
        }
        if !(file.radius > 0.0 && file.radius.is_finite()) {
            return Err(Error::Input("radius must be positive".into()));
        }
        let mut curves = Vec::new();
        for (j, c) in file.curves.iter().enumerate() {
            if c.hole.is_some_and(|h| h != (j > 0)) {
                return Err(Error::Input(format!("curve {j}: the first curve is the outer one, the rest are holes")));
            }
            let mut coeffs = Vec::new();
            for (k, re, im) in &c.coeffs_t {
                let re = parse_field(&format!("curve {j} re"), re)?;
                let im = parse_field(&format!("curve {j} im"), im)?;
                if uses_z(&re) || uses_z(&im) {
                    return Err(Error::Input(format!("curve {j}: coefficients may depend on t only")));
                }
                coeffs.push((*k, re, im));
            }
            curves.push(FamilyCurve { coeffs });
        }
        let a = parse_field("a", &file.a)?;
        let b = parse_field("b", &file.b)?;
        if uses_z(&a) || uses_z(&b) {
            return Err(Error::Input("sections may depend on t only".into()));
        }
        let phi = parse_field("phi", &file.phi)?;
        let phi_translated = phi.shift_z(&a);
        let family = DomainFamily { phi, phi_translated, curves, a, b, radius: file.radius };
        family.check_sections_holomorphic()?;
        Ok(family)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn shipped(name: &str) -> Result<Self> {
        let (_, text) = SHIPPED
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::Input(format!("unknown family '{name}'")))?;
        Self::parse(text)
    }

    pub fn connectivity(&self) -> usize {
        self.curves.len()
    }

    fn check_sections_holomorphic(&self) -> Result<()> {
        for k in 0..8 {
            let t = C64::from_polar(0.5 * self.radius, TAU * k as f64 / 8.0);
            for e in [&self.a, &self.b] {
                if e.jet(t, C64::new(0.0, 0.0)).wirtinger().tbar.norm() > 1e-12 {
                    return Err(Error::Input(format!("section {e} is not holomorphic in t")));
                }
            }
        }
        Ok(())
    }

    /// `a(t)` and `a'(t)`.
    pub fn section_a(&self, t: C64) -> (C64, C64) {
        let w = self.a.jet(t, C64::new(0.0, 0.0)).wirtinger();
        (w.value, w.t)
    }

    /// `b(t)` and `b'(t)`.
    pub fn section_b(&self, t: C64) -> (C64, C64) {
        let w = self.b.jet(t, C64::new(0.0, 0.0)).wirtinger();
        (w.value, w.t)
    }

    fn require_in_disk(&self, t: C64) -> Result<()> {
        if t.norm() >= self.radius {
            return Err(Error::Input(format!("parameter {t} outside the disk |t| < {}", self.radius)));
        }
        Ok(())
    }

    pub fn curves_at(&self, t: C64) -> Result<Vec<SmoothCurve>> {
        let z0 = C64::new(0.0, 0.0);
        self.curves
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let coeffs =
                    c.coeffs.iter().map(|(k, re, im)| (*k, C64::new(re.eval(t, z0).re, im.eval(t, z0).re))).collect();
                let orient = if j == 0 { Orientation::Positive } else { Orientation::Negative };
                SmoothCurve::new(coeffs, orient)
            })
            .collect()
    }

    pub fn domain_at(&self, t: C64) -> Result<MarkedDomain> {
        self.require_in_disk(t)?;
        let mut curves = self.curves_at(t)?;
        let holes = curves.split_off(1);
        let outer = curves.pop().expect("at least one curve");
        MarkedDomain::new(outer, holes, self.section_a(t).0, self.section_b(t).0)
    }

    /// `max |φ(t, z_j(t, θ))|` over `samples` points per curve.
    pub fn consistency(&self, t: C64, samples: usize) -> Result<f64> {
        let curves = self.curves_at(t)?;
        Ok(curves
            .iter()
            .flat_map(|c| c.samples(samples))
            .map(|z| self.phi.eval(t, z).norm())
            .fold(0.0, f64::max))
    }

    /// Check the family invariants at the given parameters: boundary and
    /// defining function agree to 1e-8, sections interior and distinct,
    /// `|φ_z| > 0` on the boundary.
    pub fn validate(&self, ts: &[C64]) -> Result<()> {
        for &t in ts {
            self.domain_at(t)?;
            let err = self.consistency(t, 64)?;
            if !(err <= 1e-8) {
                return Err(Error::InconsistentFamily(err));
            }
            for c in self.curves_at(t)? {
                for z in c.samples(64) {
                    let g = self.phi.jet(t, z).wirtinger().z.norm();
                    if g < 1e-10 {
                        return Err(Error::BoundaryNotSmooth(g));
                    }
                }
            }
        }
        Ok(())
    }

    /// Validation samples: the center, and eight points on each of two
    /// circles inside the parameter disk.
    pub fn sample_parameters(&self) -> Vec<C64> {
        let mut ts = vec![C64::new(0.0, 0.0)];
        for r in [0.5, 0.9] {
            for k in 0..8 {
                ts.push(C64::from_polar(r * self.radius, TAU * k as f64 / 8.0));
            }
        }
        ts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_families_are_valid() {
        for (name, _) in SHIPPED {
            let f = DomainFamily::shipped(name).unwrap();
            f.validate(&f.sample_parameters()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn inconsistent_family_is_rejected() {
        let text = r#"{"phi": "abs2(z) - 1", "curves": [{"coeffs_t": [[1, "exp(re(t))", "0"]]}],
                       "a": "0", "b": "0.25", "radius": 0.5}"#;
        let f = DomainFamily::parse(text).unwrap();
        assert!(matches!(f.validate(&f.sample_parameters()), Err(Error::InconsistentFamily(_))));
    }

    #[test]
    fn sections_must_be_holomorphic() {
        let text = r#"{"phi": "abs2(z) - 1", "curves": [{"coeffs_t": [[1, "1", "0"]]}],
                       "a": "0", "b": "0.25 + 0.1*conj(t)", "radius": 0.5}"#;
        assert!(matches!(DomainFamily::parse(text), Err(Error::Input(_))));
    }

    #[test]
    fn parse_error_names_field() {
        let text = r#"{"phi": "abs2(z) - ", "curves": [{"coeffs_t": [[1, "1", "0"]]}],
                       "a": "0", "b": "0.25", "radius": 0.5}"#;
        match DomainFamily::parse(text) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 10);
                assert!(msg.starts_with("phi"));
            }
            other => panic!("{other:?}"),
        }
    }
}
