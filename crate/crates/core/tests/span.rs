use std::f64::consts::PI;

use hsl_core::domain::{MarkedDomain, Orientation, SmoothCurve};
use hsl_core::oracles::{DiskCase, Transport};
use hsl_core::span::*;
use hsl_core::{Error, C64};
use rand::{Rng, SeedableRng};

const N: usize = 256;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Image of the unit disk under a univalent polynomial `f(w) = w + Σ c_k w^k`
/// with `Σ k|c_k| < 1`, marked at `f(w1)`, `f(w2)`, with closed-form
/// constants pulled back from the disk.
struct PolynomialImage {
    coeffs: Vec<(i64, C64)>,
    w1: C64,
    w2: C64,
}

impl PolynomialImage {
    fn f(&self, w: C64) -> C64 {
        self.coeffs.iter().map(|&(k, ck)| ck * w.powi(k as i32)).sum()
    }

    fn df(&self, w: C64) -> C64 {
        self.coeffs.iter().map(|&(k, ck)| ck * k as f64 * w.powi(k as i32 - 1)).sum()
    }

    fn domain(&self) -> MarkedDomain {
        let outer = SmoothCurve::new(self.coeffs.clone(), Orientation::Positive).unwrap();
        MarkedDomain::simply_connected(outer, self.f(self.w1), self.f(self.w2)).unwrap()
    }

    /// `(α, β, s, d)`: move `w1` to 0 with a disk automorphism `M`, then
    /// `α = α₀(M(w2)) - log|(f∘M⁻¹)'(0)| - log|(f∘M⁻¹)'(M(w2))|`.
    fn constants(&self) -> (f64, f64, f64, f64) {
        let (w1, w2) = (self.w1, self.w2);
        let xi = (w2 - w1) / (1.0 - w1.conj() * w2);
        let dm = |w: C64| (1.0 - w1.norm_sqr()) / (1.0 - w1.conj() * w).norm_sqr();
        let shift = (self.df(w1).norm() / dm(w1)).ln() + (self.df(w2).norm() / dm(w2)).ln();
        let disk = DiskCase::new(1.0, xi);
        (disk.alpha() - shift, disk.beta() - shift, disk.span(), disk.poincare_distance())
    }
}

fn random_image(rng: &mut impl Rng) -> PolynomialImage {
    let mut coeffs = vec![(1, c(1.0, 0.0))];
    let mut budget = 0.6;
    for k in 2..=4 {
        let size = rng.gen_range(0.0..budget) / k as f64;
        budget -= size * k as f64;
        coeffs.push((k, C64::from_polar(size, rng.gen_range(0.0..2.0 * PI))));
    }
    let w1 = C64::from_polar(rng.gen_range(0.0..0.4), rng.gen_range(0.0..2.0 * PI));
    let w2 = C64::from_polar(rng.gen_range(0.3..0.6), rng.gen_range(0.0..2.0 * PI));
    PolynomialImage { coeffs, w1, w2 }
}

fn two_connected() -> MarkedDomain {
    let outer = SmoothCurve::circle(c(0.0, 0.0), 1.0, Orientation::Positive).unwrap();
    let hole = SmoothCurve::circle(c(-0.4, 0.0), 0.2, Orientation::Negative).unwrap();
    MarkedDomain::new(outer, vec![hole], c(0.3, 0.0), c(0.0, 0.4)).unwrap()
}

#[test]
fn disk_span_and_scale_invariance() {
    let r = harmonic_span(&MarkedDomain::disk(c(0.0, 0.0), 1.0, c(0.0, 0.0), c(0.5, 0.0)).unwrap(), N).unwrap();
    assert!((r.span - 2.0 * (4.0f64 / 3.0).ln()).abs() < 1e-8);
    assert!((r.span_from_area - r.span).abs() < 1e-8);
    let big = harmonic_span(&MarkedDomain::disk(c(0.0, 0.0), 2.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap(), N).unwrap();
    assert!((big.span - r.span).abs() < 1e-8);
    assert!((big.alpha - (r.alpha - 2.0 * 2f64.ln())).abs() < 1e-8);
}

#[test]
fn conformal_images_of_the_disk() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let img = random_image(&mut rng);
        let d = img.domain();
        let (alpha, beta, s, dist) = img.constants();
        let r = harmonic_span(&d, N).unwrap();
        assert!((r.alpha - alpha).abs() < 1e-8, "{} vs {alpha}", r.alpha);
        assert!((r.beta - beta).abs() < 1e-8, "{} vs {beta}", r.beta);
        assert!((r.span - s).abs() < 1e-8);
        assert!((poincare_distance(&d, N).unwrap() - dist).abs() < 1e-8);
        assert!(check_span_distance_identity(&d, N).unwrap() < 1e-8);
    }
}

#[test]
fn disk_poincare_distance() {
    let d = MarkedDomain::disk(c(0.0, 0.0), 1.0, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    assert!((poincare_distance(&d, N).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-10);
    let exact = 4.0 * (2.0 / 3f64.sqrt()).ln();
    assert!((exact - 2.0 * (4.0f64 / 3.0).ln()).abs() < 1e-15);
    assert!(check_span_distance_identity(&d, N).unwrap() < 1e-8);
    assert!(matches!(poincare_distance(&two_connected(), N), Err(Error::NotSimplyConnected(2))));
}

#[test]
fn adding_a_hole_increases_the_span() {
    let with_hole = harmonic_span(&two_connected(), N).unwrap().span;
    let without = MarkedDomain::disk(c(0.0, 0.0), 1.0, c(0.3, 0.0), c(0.0, 0.4)).unwrap();
    let without = harmonic_span(&without, N).unwrap().span;
    assert!(with_hole > without + 1e-4, "{with_hole} vs {without}");
}

#[test]
fn affine_transport() {
    let d = two_connected();
    let base = harmonic_span(&d, N).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..3 {
        let lambda = C64::from_polar(rng.gen_range(0.5..2.5), rng.gen_range(0.0..2.0 * PI));
        let shift = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let tr = Transport::new(lambda, shift);
        let moved = harmonic_span(&d.transformed(lambda, shift).unwrap(), N).unwrap();
        assert!((moved.span - base.span).abs() <= 1e-7 * base.span);
        assert!((moved.alpha - tr.alpha(base.alpha)).abs() < 1e-8);
        assert!((moved.beta - tr.beta(base.beta)).abs() < 1e-8);
        assert!((C64::new(moved.b[0], moved.b[1]) - tr.point(d.b())).norm() < 1e-12);
    }
}

#[test]
fn s_function_grid_statuses() {
    let d = two_connected();
    let xi = c(0.3, 0.0);
    let etas = [xi, xi + 1e-3, c(0.0, 0.4), c(0.1, -0.5), c(-0.4, 0.0), c(2.0, 0.0)];
    let g = s_function_grid(&d, xi, &etas, N);
    let status: Vec<&str> = g.points.iter().map(|p| p.status.as_str()).collect();
    assert_eq!(status, ["diagonal", "too_close", "ok", "ok", "invalid_domain", "invalid_domain"]);
    assert_eq!(g.points[0].span, Some(0.0));
    assert!((g.points[2].span.unwrap() - harmonic_span(&d, N).unwrap().span).abs() < 1e-12);
    // Symmetric in the two marked points.
    let back = s_function_grid(&d, c(0.1, -0.5), &[xi], N);
    assert!((back.points[0].span.unwrap() - g.points[3].span.unwrap()).abs() < 1e-8);
}

#[test]
fn s_function_grows_with_separation_and_pinches_quadratically() {
    let d = MarkedDomain::disk(c(0.0, 0.0), 1.0, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let etas: Vec<C64> = (1..=6).map(|k| c(0.1 * k as f64, 0.0)).collect();
    let g = s_function_grid(&d, c(0.0, 0.0), &etas, N);
    let spans: Vec<f64> = g.points.iter().map(|p| p.span.unwrap()).collect();
    assert!(spans.windows(2).all(|w| w[1] > w[0]));
    // s ≈ 2|η|² near the diagonal.
    assert!((spans[0] / 0.01 - 2.0).abs() < 0.02);
}

#[test]
fn exhaustion_by_disks() {
    let domains: Vec<MarkedDomain> = (1..=8)
        .map(|n| MarkedDomain::disk(c(0.0, 0.0), 1.0 - 1.0 / (n as f64 + 2.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap())
        .collect();
    let limit = MarkedDomain::disk(c(0.0, 0.0), 1.0, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let r = exhaustion_sequence(&domains, Some(&limit), N).unwrap();
    assert!(r.monotone && r.strictly_decreasing);
    for (n, s) in r.spans.iter().enumerate() {
        let rn = 1.0 - 1.0 / (n as f64 + 3.0);
        assert!((s - DiskCase::new(rn, c(0.5, 0.0)).span()).abs() < 1e-8);
    }
    let closed = DiskCase::new(0.9, c(0.5, 0.0)).span() - 2.0 * (4.0f64 / 3.0).ln();
    assert!((r.gap.unwrap() - closed).abs() < 1e-8);
    let mut reversed = domains.clone();
    reversed.reverse();
    assert!(matches!(exhaustion_sequence(&reversed, None, N), Err(Error::NotNested(0))));
}

#[test]
fn fingerprint_is_stable() {
    let d = two_connected();
    assert_eq!(fingerprint(&d), fingerprint(&d.with_points(d.a(), d.b()).unwrap()));
    assert_ne!(fingerprint(&d), fingerprint(&d.with_points(d.b(), d.a()).unwrap()));
}
