//! Quadrature, differentiation and erf against closed-form oracles.

use proptest::prelude::*;
use zeromodes::radial::{
    differentiate, erf, integrate_radial, integrate_radial_fn, integrate_radial_window_fn, Dim,
    RadialProfile,
};
use zeromodes::Error;

use std::f64::consts::PI;

const TOL: f64 = 1e-10;

#[test]
fn gaussian_full_plane() {
    // int e^{-r^2} 2 pi r dr = pi
    let v = integrate_radial_fn(|r| (-r * r).exp(), Dim::Two, TOL).unwrap();
    assert!((v - PI).abs() <= TOL * PI * 10.0, "{v}");
}

#[test]
fn rational_square() {
    // antiderivative of 4 r/(1+r^2)^2 is -2/(1+r^2): integral 4 pi
    let v = integrate_radial_fn(
        |r| {
            let d = 1.0 + r * r;
            4.0 / (d * d)
        },
        Dim::Two,
        TOL,
    )
    .unwrap();
    assert!((v - 4.0 * PI).abs() <= 1e-9, "{v}");
}

#[test]
fn rational_cube() {
    // antiderivative of 8 r/(1+r^2)^3 is -2/(1+r^2)^2: integral 4 pi
    let v = integrate_radial_fn(
        |r| {
            let d = 1.0 + r * r;
            8.0 / (d * d * d)
        },
        Dim::Two,
        TOL,
    )
    .unwrap();
    assert!((v - 4.0 * PI).abs() <= 1e-9, "{v}");
}

#[test]
fn coulomb_singularity() {
    // 2 pi int e^{-2r} dr = pi: the 1/r cancels the area element
    let v = integrate_radial_fn(|r| (-2.0 * r).exp() / r, Dim::Two, TOL).unwrap();
    assert!((v - PI).abs() <= 1e-10, "{v}");
}

#[test]
fn three_dimensional_gaussian() {
    // 4 pi int e^{-r^2} r^2 dr = pi^{3/2}
    let v = integrate_radial_fn(|r| (-r * r).exp(), Dim::Three, TOL).unwrap();
    let expect = PI.powf(1.5);
    assert!((v - expect).abs() <= 1e-10 * expect, "{v}");
}

#[test]
fn profile_wrapper_integrates() {
    let p = RadialProfile::analytic("gaussian", vec![], |r| (-r * r).exp());
    let v = integrate_radial(&p, Dim::Two, TOL).unwrap();
    assert!((v - PI).abs() <= 1e-9);
}

#[test]
fn near_critical_power_tail() {
    // f = r^{-2.05} for r >= 1, 1 inside: 2 pi (1/2 + 1/0.05)
    let v = integrate_radial_fn(
        |r| if r < 1.0 { 1.0 } else { r.powf(-2.05) },
        Dim::Two,
        TOL,
    )
    .unwrap();
    let expect = 2.0 * PI * (0.5 + 1.0 / 0.05);
    assert!((v - expect).abs() <= 1e-8 * expect, "{v} vs {expect}");
}

#[test]
fn divergence_carries_partial_and_ratio() {
    // int r^{-1.2} r dr / r^2... -> integrand r^{-2.2} against r dr diverges at 0
    let err = integrate_radial_fn(|r| r.powf(-2.2), Dim::Two, TOL).unwrap_err();
    match err {
        Error::DivergenceSuspected { partial, last_ratio } => {
            assert!(partial.is_finite());
            assert!(last_ratio > 1.0, "{last_ratio}");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn window_cutoff_matches_closed_form() {
    // int_{1e-4}^inf r^{-2.2} r dr = (1e-4)^{-0.2} / 0.2
    let v =
        integrate_radial_window_fn(|r| r.powf(-2.2), Dim::Two, Some(1e-4), None, TOL).unwrap();
    let expect = 2.0 * PI * (1e-4f64).powf(-0.2) / 0.2;
    assert!((v - expect).abs() <= 1e-8 * expect, "{v} vs {expect}");
}

#[test]
fn differentiate_power_rule() {
    let p = RadialProfile::analytic("r^2", vec![], |r| r * r);
    let d = differentiate(&p, 1).unwrap();
    for r in [0.01, 0.1, 1.0, 10.0, 100.0] {
        assert!((d.eval(r) - 2.0 * r).abs() <= 1e-6 * (2.0 * r), "r={r}");
    }
}

#[test]
fn differentiate_log_profile() {
    // d/dr log(1+r^2) = 2r/(1+r^2); second derivative 2(1-r^2)/(1+r^2)^2
    let p = RadialProfile::analytic("log(1+r^2)", vec![], |r| (r * r).ln_1p());
    let d1 = differentiate(&p, 1).unwrap();
    let d2 = differentiate(&p, 2).unwrap();
    for k in 0..=40 {
        let r = 0.01 * (100.0f64 / 0.01).powf(k as f64 / 40.0);
        let e1 = 2.0 * r / (1.0 + r * r);
        let e2 = 2.0 * (1.0 - r * r) / (1.0 + r * r) / (1.0 + r * r);
        assert!(
            (d1.eval(r) - e1).abs() <= 1e-6 * e1.abs(),
            "d1 at r={r}: {} vs {e1}",
            d1.eval(r)
        );
        assert!(
            (d2.eval(r) - e2).abs() <= 1e-6 * e2.abs().max(1e-4),
            "d2 at r={r}: {} vs {e2}",
            d2.eval(r)
        );
    }
}

#[test]
fn differentiate_then_integrate_recovers_increments() {
    // int_a^b f'(r) dr = f(b) - f(a) for f = exp(-r^2/2)
    let p = RadialProfile::analytic("exp(-r^2/2)", vec![], |r| (-r * r / 2.0).exp());
    let d = differentiate(&p, 1).unwrap();
    for (a, b) in [(0.1, 1.0), (0.5, 2.5), (1.0, 4.0)] {
        let v = integrate_radial_window_fn(|r| d.eval(r) / r, Dim::Two, Some(a), Some(b), 1e-12)
            .unwrap()
            / (2.0 * PI);
        let expect = p.eval(b) - p.eval(a);
        assert!((v - expect).abs() <= 1e-6, "[{a},{b}]: {v} vs {expect}");
    }
}

#[test]
fn sampled_profile_differentiation() {
    let grid = zeromodes::RadialGrid::log_spaced(0.05, 20.0, 200).unwrap();
    let vals: Vec<f64> = grid.nodes().iter().map(|&r| (r as f64).powi(3)).collect();
    let p = RadialProfile::sampled(grid.clone(), vals).unwrap();
    let d = differentiate(&p, 1).unwrap();
    // interior nodes only; non-uniform stencils are second order
    for &r in &grid.nodes()[5..150] {
        let expect = 3.0 * r * r;
        assert!(
            (d.eval(r) - expect).abs() <= 2e-3 * expect,
            "r={r}: {} vs {expect}",
            d.eval(r)
        );
    }
}

/// Independent alternating Taylor series for erf, used only as an oracle.
fn erf_taylor(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x * x / kf;
        sum += term / (2.0 * kf + 1.0);
        if term.abs() < 1e-18 {
            break;
        }
    }
    2.0 / PI.sqrt() * sum
}

#[test]
fn erf_matches_taylor_oracle() {
    for x in [0.1, 0.25, 0.5, 0.8427, 1.0, 1.5, 2.0, 3.0] {
        let expect = erf_taylor(x);
        assert!(
            (erf(x) - expect).abs() <= 1e-12,
            "x={x}: {} vs {expect}",
            erf(x)
        );
    }
    assert!((erf(1.0) - 0.8427007929497149).abs() <= 1e-12);
    assert_eq!(erf(0.0), 0.0);
    assert!((erf(6.0) - 1.0).abs() <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Linearity: integral of a*f + b*g equals the combination of integrals.
    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let f = |r: f64| (-r * r).exp();
        let g = |r: f64| 1.0 / ((1.0 + r * r) * (1.0 + r * r));
        let fi = integrate_radial_fn(f, Dim::Two, TOL).unwrap();
        let gi = integrate_radial_fn(g, Dim::Two, TOL).unwrap();
        let combo = integrate_radial_fn(|r| a * f(r) + b * g(r), Dim::Two, TOL).unwrap();
        let expect = a * fi + b * gi;
        let scale = fi.abs().max(gi.abs()).max(expect.abs());
        prop_assert!((combo - expect).abs() <= 2.0 * TOL * scale + 1e-13);
    }

    /// Disk indicators integrate to the disk area.
    #[test]
    fn indicator_area(radius in 0.3f64..4.0) {
        let v = integrate_radial_fn(
            |r| if r <= radius { 1.0 } else { 0.0 },
            Dim::Two,
            TOL,
        ).unwrap();
        let area = PI * radius * radius;
        prop_assert!((v - area).abs() <= 1e-8 * area);
    }
}
