use hsl_core::domain::MarkedDomain;
use hsl_core::oracles::{DiskCase, HartogsFamily, QuadraticFamily};
use hsl_core::variation::*;
use hsl_core::{Error, C64};
use proptest::prelude::*;

const N: usize = 256;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn family(name: &str) -> DomainFamily {
    DomainFamily::shipped(name).unwrap()
}

fn t0() -> C64 {
    c(0.0, 0.0)
}

#[test]
fn k1_examples() {
    assert_eq!(eval_k1(&family("product"), t0(), c(0.6, 0.8)).unwrap(), c(0.0, 0.0));
    for k in 0..8 {
        let z = C64::from_polar(1.0, 0.7 * k as f64);
        assert!((eval_k1(&family("hartogs"), t0(), z).unwrap() - c(-1.0, 0.0)).norm() < 1e-14);
    }
    assert!((eval_k1(&family("translation"), t0(), c(1.0, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn k2_examples() {
    for k in 0..8 {
        let z = C64::from_polar(1.0, 0.7 * k as f64);
        assert_eq!(eval_k2(&family("product"), t0(), z).unwrap(), 0.0);
        assert!(eval_k2(&family("hartogs"), t0(), z).unwrap().abs() < 1e-14);
        assert!((eval_k2(&family("concave"), t0(), z).unwrap() + 1.0).abs() < 1e-14);
        assert!((eval_k2(&family("ball"), t0(), z).unwrap() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn degenerate_gradient_is_reported() {
    let f = DomainFamily::parse(
        r#"{"phi": "pow(abs2(z) - 1, 2)", "curves": [{"coeffs_t": [[1, "1", "0"]]}], "a": "0", "b": "0.25", "radius": 0.5}"#,
    )
    .unwrap();
    assert!(matches!(eval_k1(&f, t0(), c(1.0, 0.0)), Err(Error::BoundaryNotSmooth(_))));
}

#[test]
fn hartogs_first_variation() {
    let f = family("hartogs");
    let fv = first_variation(&f, t0(), N).unwrap();
    let oracle = HartogsFamily { xi: 0.25 };
    assert!((fv.alpha - c(oracle.dalpha_dt(0.0), 0.0)).norm() < 1e-8, "{}", fv.alpha);
    assert!((fv.beta - c(oracle.dbeta_dt(0.0), 0.0)).norm() < 1e-8, "{}", fv.beta);
    assert!((fv.span - (fv.alpha - fv.beta)).norm() < 1e-12);
    let fd = fd_derivative(&f, t0(), Quantity::Alpha, FdOrder::Dt, DEFAULT_HT, N).unwrap();
    assert!((fd - c(-1.0 / 15.0, 0.0)).norm() < 1e-6, "{fd}");
    assert!((fd - fv.alpha).norm() < 1e-4);
}

#[test]
fn first_variation_off_center_matches_fd() {
    let f = family("ball");
    let t = c(0.2, -0.1);
    let fv = first_variation(&f, t, N).unwrap();
    for (q, v) in [(Quantity::Alpha, fv.alpha), (Quantity::Beta, fv.beta), (Quantity::Span, fv.span)] {
        let fd = fd_derivative(&f, t, q, FdOrder::Dt, DEFAULT_HT, N).unwrap();
        assert!((fd - v).norm() <= 1e-4 * (1.0 + v.norm()), "{q:?}: {v} vs {fd}");
    }
}

#[test]
fn product_family_is_stationary() {
    let f = family("product");
    let fv = first_variation(&f, c(0.1, 0.2), N).unwrap();
    for v in [fv.alpha, fv.beta, fv.span] {
        assert!(v.norm() < 1e-8);
    }
    let fd = fd_derivative(&f, t0(), Quantity::Span, FdOrder::Dt, DEFAULT_HT, N).unwrap();
    assert!(fd.norm() < 1e-10);
    let sv = second_variation_span(&f, t0(), N).unwrap();
    assert!(sv.total.abs() < 1e-8);
}

#[test]
fn translation_family_span_is_constant() {
    let f = family("translation");
    let fv = first_variation(&f, c(0.1, 0.05), N).unwrap();
    assert!(fv.span.norm() < 1e-8);
    assert!(fv.span_with_section_terms.norm() < 1e-8);
    let fd = fd_derivative(&f, c(0.1, 0.05), Quantity::Span, FdOrder::Dt, DEFAULT_HT, N).unwrap();
    assert!(fd.norm() < 1e-8);
}

#[test]
fn moving_zero_point_on_fixed_disk() {
    // α = -2 log|ξ| - log(1 - |ξ|²) with ξ(t) = 0.25 + 0.1 t on the unit disk.
    let f = DomainFamily::parse(
        r#"{"phi": "abs2(z) - 1", "curves": [{"coeffs_t": [[1, "1", "0"]]}], "a": "0", "b": "0.25 + 0.1*t", "radius": 0.8}"#,
    )
    .unwrap();
    let t = c(0.3, 0.4);
    let xi = c(0.25, 0.0) + 0.1 * t;
    let dxi = 0.1;
    let alpha_t = -dxi / xi + xi.conj() * dxi / (1.0 - xi.norm_sqr());
    let beta_t = -dxi / xi - xi.conj() * dxi / (1.0 - xi.norm_sqr());
    let fv = first_variation(&f, t, N).unwrap();
    assert!((fv.alpha - alpha_t).norm() < 1e-8, "{} vs {alpha_t}", fv.alpha);
    assert!((fv.beta - beta_t).norm() < 1e-8, "{} vs {beta_t}", fv.beta);
    // k₁ ≡ 0 here, so the form without section terms misses the whole derivative.
    assert!(fv.span.norm() < 1e-12);
    assert!((fv.span_with_section_terms - (alpha_t - beta_t)).norm() < 1e-8);
    let check = DiskCase::new(1.0, xi);
    assert!((quantity_at(&f, t, Quantity::Span, N).unwrap() - check.span()).abs() < 1e-8);
}

#[test]
fn hartogs_second_variation() {
    let f = family("hartogs");
    let sv = second_variation_span(&f, t0(), N).unwrap();
    let oracle = HartogsFamily { xi: 0.25 }.span_laplacian(0.0);
    assert!((oracle - 32.0 / 225.0).abs() < 1e-12);
    assert!(sv.boundary.abs() < 1e-12);
    assert!((sv.total - oracle).abs() < 1e-6, "{sv:?}");
    let fd = fd_derivative(&f, t0(), Quantity::Span, FdOrder::Laplacian, DEFAULT_HT, N).unwrap().re;
    assert!((sv.total - fd).abs() < 1e-3 * fd.abs());
}

#[test]
fn concave_second_variation() {
    let f = family("concave");
    let sv = second_variation_span(&f, t0(), N).unwrap();
    let oracle = QuadraticFamily { xi: 0.25, kappa: 1.0 }.span_laplacian_at_origin();
    assert!((oracle + 2.0 / 15.0).abs() < 1e-12);
    let fd = fd_derivative(&f, t0(), Quantity::Span, FdOrder::Laplacian, DEFAULT_HT, N).unwrap().re;
    assert!((fd - oracle).abs() < 1e-5, "{fd}");
    assert!((sv.total - fd).abs() < 1e-3 * fd.abs(), "{sv:?} vs {fd}");
}

#[test]
fn second_variation_with_moving_hole_and_off_center() {
    for (name, t) in [("moving_hole", c(0.1, -0.2)), ("ball", c(-0.15, 0.1))] {
        let f = family(name);
        let sv = second_variation_span(&f, t, N).unwrap();
        let fd = fd_derivative(&f, t, Quantity::Span, FdOrder::Laplacian, DEFAULT_HT, N).unwrap().re;
        assert!((sv.total - fd).abs() < 1e-3 * fd.abs().max(1e-3), "{name}: {sv:?} vs {fd}");
    }
}

#[test]
fn hadamard_derivatives_match_gradient_differences() {
    let f = family("moving_hole");
    let t = c(0.05, 0.1);
    let d = hsl_core::principal::compute_principal_pair(&f.domain_at(t).unwrap(), N).unwrap();
    let tb = tbar_derivatives(&f, &d, t).unwrap();
    let points = [c(-0.5, 0.3), c(0.2, -0.6), c(0.5, 0.5), c(0.0, 0.0)];
    let fd = dbar_gradient_fd(&f, t, &points, DEFAULT_HT, N).unwrap();
    for (z, (dp, dq)) in points.iter().zip(fd) {
        assert!((tb.p_dz(*z) - dp).norm() < 1e-5, "{} vs {dp}", tb.p_dz(*z));
        assert!((C64::i() * tb.q_conj_dz(*z) - dq).norm() < 1e-5, "{} vs {dq}", tb.q_conj_dz(*z));
    }
}

#[test]
fn stencil_must_stay_in_disk() {
    let f = family("hartogs");
    assert!(matches!(
        fd_derivative(&f, c(0.5999, 0.0), Quantity::Span, FdOrder::Dt, DEFAULT_HT, 64),
        Err(Error::StencilOutOfDisk)
    ));
}

#[test]
fn scans_separate_pseudoconvex_from_concave() {
    let grid = TGrid::new(t0(), 0.3, 5).unwrap();
    let r = subharmonicity_scan(&family("hartogs"), &grid, DEFAULT_HT, 128);
    assert_eq!(r.failures, 0);
    assert!(r.pseudoconvex && r.span_subharmonic && r.beta_superharmonic, "{r:?}");
    assert!(r.min_lap_span > 0.0 && r.max_lap_beta < 0.0);
    let oracle = HartogsFamily { xi: 0.25 };
    for row in &r.rows {
        assert!((row.lap_span - oracle.span_laplacian(row.t[0])).abs() < 1e-4);
        assert!((row.lap_beta - oracle.beta_laplacian(row.t[0])).abs() < 1e-4);
    }
    let r = subharmonicity_scan(&family("concave"), &grid, DEFAULT_HT, 128);
    assert!(!r.pseudoconvex && !r.span_subharmonic);
    assert!((r.min_k2 + 1.0).abs() < 1e-8);
    let r = subharmonicity_scan(&family("product"), &grid, DEFAULT_HT, 128);
    for row in &r.rows {
        assert!(row.lap_span.abs() < 1e-8 && row.lap_beta.abs() < 1e-8);
    }
}

#[test]
fn logcosh_distance() {
    let grid = TGrid::new(t0(), 0.3, 3).unwrap();
    let r = logcosh_subharmonicity(&family("hartogs"), &grid, DEFAULT_HT, N).unwrap();
    let oracle = HartogsFamily { xi: 0.25 };
    assert!(r.subharmonic && r.max_identity_residual < 1e-6);
    for row in &r.rows {
        assert!((row.delta - oracle.log_cosh_distance(row.t[0])).abs() < 1e-8);
    }
    for name in ["translation", "product"] {
        let r = logcosh_subharmonicity(&family(name), &grid, DEFAULT_HT, 128).unwrap();
        assert!(r.rows.iter().all(|row| row.lap_delta.abs() < 1e-6), "{name}");
    }
    assert!(matches!(
        logcosh_subharmonicity(&family("moving_hole"), &grid, DEFAULT_HT, 128),
        Err(Error::NotSimplyConnected(2))
    ));
}

#[test]
fn rigidity_flags() {
    let grid = TGrid::new(t0(), 0.3, 3).unwrap();
    let r = rigidity_check(&family("product"), &grid, 128).unwrap();
    assert!(r.trivial_candidate && r.max_slit_deviation <= 1e-7 && r.span_deviation <= 1e-7);
    assert!(rigidity_check(&family("translation"), &grid, 128).unwrap().trivial_candidate);
    assert!(!rigidity_check(&family("hartogs"), &grid, 128).unwrap().trivial_candidate);
    assert!(!rigidity_check(&family("moving_hole"), &grid, 128).unwrap().trivial_candidate);
}

#[test]
fn sfunction_restricted_to_lines() {
    let disk = MarkedDomain::disk(t0(), 1.0, t0(), c(0.5, 0.0)).unwrap();
    let grid = TGrid::new(t0(), 0.3, 3).unwrap();
    let r = sfunction_psh_check(&disk, (t0(), c(0.5, 0.0)), (c(0.0, 0.0), c(1.0, 0.0)), &grid, 1e-2, 128).unwrap();
    assert!(r.strictly_subharmonic, "{r:?}");
    for row in &r.rows {
        // With ξ = 0, s = -2 log(1 - |η|²) and ∂²s/∂η∂η̄ = 2/(1 - |η|²)².
        let eta = c(0.5 + row.u[0], row.u[1]);
        let u = eta.norm_sqr();
        assert!((row.laplacian - 2.0 / ((1.0 - u) * (1.0 - u))).abs() < 1e-3, "{}", row.laplacian);
    }
    let r = sfunction_psh_check(&disk, (t0(), c(0.25, 0.0)), (c(1.0, 0.0), c(1.0, 0.0)), &grid, 1e-2, 128).unwrap();
    assert!(r.strictly_subharmonic);
    assert!(matches!(
        sfunction_psh_check(&disk, (t0(), c(0.1, 0.0)), (c(0.0, 0.0), c(1.0, 0.0)), &grid, 1e-2, 128),
        Err(Error::LineHitsDiagonal)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jets_match_finite_differences(
        tr in -0.5f64..0.5, ti in -0.5f64..0.5, zr in 0.3f64..1.2, zi in -1.0f64..1.0, which in 0usize..6,
    ) {
        let src = [
            "exp(t*conj(z)) + log(z)",
            "abs2(z - t)*re(z) - im(t*z)",
            "pow(z + 2, -3) * conj(t) / (z + 3)",
            "log(abs2(z) + abs2(t)) - exp(re(t))",
            "(abs2(z) - 1)*(abs2(z - 0.5 - 0.1*t) - 0.0225)",
            "pow(conj(z), 4) - pow(t, 2)*z",
        ][which];
        let e = Expr::parse(src).unwrap();
        let (t, z) = (c(tr, ti), c(zr, zi));
        let jet = e.jet(t, z);
        prop_assert_eq!(jet.v, e.eval(t, z));
        let h = 1e-4;
        let f = |d: [f64; 4]| e.eval(t + c(d[0], d[1]), z + c(d[2], d[3]));
        let unit = |i: usize, s: f64| { let mut d = [0.0; 4]; d[i] = s; d };
        for i in 0..4 {
            let g = (f(unit(i, h)) - f(unit(i, -h))) / (2.0 * h);
            prop_assert!((g - jet.g[i]).norm() < 1e-6 * (1.0 + g.norm()));
            for j in 0..4 {
                let mut pp = unit(i, h); pp[j] += h;
                let mut pm = unit(i, h); pm[j] -= h;
                let mut mp = unit(i, -h); mp[j] += h;
                let mut mm = unit(i, -h); mm[j] -= h;
                let hij = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
                prop_assert!((hij - jet.h[i][j]).norm() < 1e-5 * (1.0 + hij.norm()));
            }
        }
    }

    #[test]
    fn k2_is_invariant_under_positive_multipliers(theta in 0.0f64..6.28, tr in -0.3f64..0.3, ti in -0.3f64..0.3) {
        let z = C64::from_polar((1.0 + tr * tr + ti * ti).sqrt(), theta);
        let t = c(tr, ti);
        let phi = Expr::parse("abs2(z) - 1 - abs2(t)").unwrap();
        let scaled = Expr::parse("(abs2(z) - 1 - abs2(t))*exp(re(z*t) + abs2(z))").unwrap();
        let (a, b) = (levi(&phi, t, z).unwrap(), levi(&scaled, t, z).unwrap());
        prop_assert!((a.k2 - b.k2).abs() < 1e-8);
        prop_assert!(a.k2_residue.abs() < 1e-12 && b.k2_residue.abs() < 1e-12);
        let w = phi.jet(t, z).wirtinger();
        let wb = scaled.jet(t, z).wirtinger();
        // Mixed partials of a real function are conjugate-consistent.
        prop_assert!((w.t_zbar - w.tbar_z.conj()).norm() < 1e-12);
        prop_assert!((wb.t_zbar - wb.tbar_z.conj()).norm() < 1e-12 * (1.0 + wb.t_zbar.norm()));
        prop_assert!(wb.z_zbar.im.abs() < 1e-12 && wb.t_tbar.im.abs() < 1e-12);
    }
}
