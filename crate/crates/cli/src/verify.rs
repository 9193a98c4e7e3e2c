//! Verification batteries behind `zeromodes verify --suite ...`. Each check
//! carries the measured quantity and the threshold it was held to, so the
//! JSON report stands on its own.

use clap::ValueEnum;
use serde::Serialize;

use zeromodes::bounds;
use zeromodes::error::{Error, Result};
use zeromodes::functionals;
use zeromodes::inequalities::{self, InequalityKind};
use zeromodes::modes::{self, ZeroMode};
use zeromodes::planar;
use zeromodes::radial::{self, Dim, RadialGrid, RadialProfile};

use crate::Common;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Zeromode,
    Diamagnetic,
    Projector,
    Inequalities,
    Stability,
    El,
}

impl Suite {
    pub fn label(self) -> &'static str {
        match self {
            Suite::Zeromode => "zeromode",
            Suite::Diamagnetic => "diamagnetic",
            Suite::Projector => "projector",
            Suite::Inequalities => "inequalities",
            Suite::Stability => "stability",
            Suite::El => "el",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

fn check_le(name: &str, measured: f64, threshold: f64, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: measured <= threshold,
        measured,
        threshold,
        detail: detail.into(),
    }
}

fn check_in(name: &str, measured: f64, lo: f64, hi: f64, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: (lo..=hi).contains(&measured),
        measured,
        threshold: lo,
        detail: format!("expected in [{lo}, {hi}]; {}", detail.into()),
    }
}

pub fn run_suite(
    common: &Common,
    suite: Suite,
    family: &str,
    b: Option<f64>,
) -> Result<Vec<Check>> {
    match suite {
        Suite::Zeromode => zeromode_suite(common, family, b),
        Suite::Diamagnetic => diamagnetic_suite(common, family, b),
        Suite::Projector => Ok(projector_suite()),
        Suite::Inequalities => inequalities_suite(common),
        Suite::Stability => stability_suite(common),
        Suite::El => el_suite(common, family, b),
    }
}

fn mode_for(family: &str, b: Option<f64>, default_b: f64) -> Result<(ZeroMode, bool)> {
    match family {
        "historical" => Ok((modes::family_historical(), true)),
        "step" => Ok((modes::family_step(b.unwrap_or(default_b))?, false)),
        other => Err(Error::InvalidParameter(format!(
            "unsupported family {other} for this suite"
        ))),
    }
}

fn zeromode_suite(common: &Common, family: &str, b: Option<f64>) -> Result<Vec<Check>> {
    let (mode, smooth) = mode_for(family, b, 2.82)?;
    let mut checks = Vec::new();

    // Stokes relation r a(r) = int_0^r B s ds on log nodes
    let grid = RadialGrid::log_spaced(0.02, 50.0, 24)?;
    let mut worst = 0.0f64;
    for &r in grid.nodes() {
        if let Some(k) = mode.kink_radius() {
            if (r - k).abs() < 0.05 {
                continue;
            }
        }
        let cumulative = radial::integrate_radial_window_fn(
            |s| mode.field().eval(s),
            Dim::Two,
            None,
            Some(r),
            1e-12,
        )? / (2.0 * std::f64::consts::PI);
        let dev = (r * mode.tangential_potential().eval(r) - cumulative).abs()
            / cumulative.abs().max(1e-12);
        worst = worst.max(dev);
    }
    checks.push(check_le(
        "stokes_relation",
        worst,
        1e-8,
        "max relative deviation of r a(r) from the cumulative flux",
    ));

    if family == "historical" {
        let built = modes::ac_construct(mode.field(), true, 1e-12)?;
        let mut dev = 0.0f64;
        for k in 0..=10 {
            let r = 0.01 * (100.0f64 / 0.01).powf(k as f64 / 10.0);
            let f_ref = mode.lower_component().eval(r);
            dev = dev.max(((built.lower_component().eval(r) - f_ref) / f_ref).abs());
        }
        checks.push(check_le(
            "flux_map_round_trip",
            dev,
            1e-8,
            "reconstructing the mode from its field reproduces f",
        ));
    }

    let l2 = functionals::l2_norm_sq(&mode, common.tol)?;
    checks.push(check_le(
        "unit_l2_norm",
        (l2 - 1.0).abs(),
        1e-8,
        "normalized spinor carries unit L2 norm",
    ));

    // finite-difference residual at two resolutions
    let m_fine = common.grid_m;
    let m_coarse = (m_fine + 1) / 2;
    let fine = planar::sample(&mode, common.grid_l, m_fine)?;
    let coarse = planar::sample(&mode, common.grid_l, m_coarse)?;
    let r_fine = planar::pauli_residual(&fine);
    let r_coarse = planar::pauli_residual(&coarse);
    let ratio = r_coarse / r_fine;
    if smooth {
        checks.push(check_in(
            "pauli_residual_convergence",
            ratio,
            3.5,
            4.5,
            "halving h divides the residual by about four",
        ));
    } else {
        checks.push(Check {
            name: "pauli_residual_convergence".into(),
            passed: ratio >= 2.5,
            measured: ratio,
            threshold: 2.5,
            detail: "field jump excluded; rate is slightly below second order".into(),
        });
    }
    let grad = planar::gradient_norm(&fine);
    checks.push(check_le(
        "pauli_residual_relative",
        r_fine / grad,
        1e-2,
        "residual small against the discrete gradient norm",
    ));

    let gauged = planar::pauli_residual(&fine.gauge_transformed(1e-3));
    checks.push(check_le(
        "gauge_invariance",
        (gauged - r_fine).abs(),
        1e-8,
        "adding grad(c x1) to A and the matching phase to psi",
    ));

    let (lhs_f, rhs_f) = planar::positive_energy_identity(&fine);
    let (lhs_c, rhs_c) = planar::positive_energy_identity(&coarse);
    let gap_f = (lhs_f - rhs_f).abs();
    let gap_c = (lhs_c - rhs_c).abs();
    checks.push(Check {
        name: "energy_identity_gap_shrinks".into(),
        passed: gap_c / gap_f >= 2.5,
        measured: gap_c / gap_f,
        threshold: 2.5,
        detail: format!("coarse gap {gap_c:.3e}, fine gap {gap_f:.3e}"),
    });

    let negated = planar::pauli_residual(&fine.negated_potential());
    checks.push(Check {
        name: "negated_potential_rejected".into(),
        passed: negated > 0.5,
        measured: negated,
        threshold: 0.5,
        detail: "reversing A destroys the zero mode".into(),
    });

    Ok(checks)
}

/// Pinned constant for the O(h^2) slack tolerance of the diamagnetic check.
const SLACK_H2_CONSTANT: f64 = 2.0;

fn diamagnetic_suite(common: &Common, family: &str, b: Option<f64>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    match family {
        "historical" | "step" => {
            let (mode, equality_case) = mode_for(family, b, 4.0)?;
            let fs = planar::sample(&mode, common.grid_l, common.grid_m)?;
            let s = planar::diamagnetic_slack(&fs);
            let h = fs.spacing();
            let floor = -SLACK_H2_CONSTANT * h * h;
            checks.push(Check {
                name: "min_slack_above_h2_floor".into(),
                passed: s.min_slack >= floor,
                measured: s.min_slack,
                threshold: floor,
                detail: format!("|(p+A)psi|^2 - 2|grad|psi||^2 >= {floor:.3e}"),
            });
            if equality_case {
                checks.push(check_le(
                    "equality_case_magnitude",
                    s.min_slack.abs(),
                    SLACK_H2_CONSTANT * h * h,
                    "the rational mode saturates the inequality pointwise",
                ));
            }
            if let Some(path) = &common.out {
                let file = std::fs::File::create(path)
                    .map_err(|e| Error::InvalidParameter(format!("cannot write slack csv: {e}")))?;
                planar::write_slack_csv(&s, std::io::BufWriter::new(file))
                    .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            }
        }
        "gaussian" => {
            // not a zero mode: psi2 = exp(-r^2) with A = 0 must violate
            let psi = RadialProfile::analytic("exp(-r^2)", vec![], |r| (-r * r).exp());
            let fs = planar::sample_scalar(&psi, common.grid_l, common.grid_m)?;
            let s = planar::diamagnetic_slack(&fs);
            checks.push(Check {
                name: "violation_detected".into(),
                passed: s.min_slack < -0.5,
                measured: s.min_slack,
                threshold: -0.5,
                detail: "without the zero-mode hypothesis the inequality fails".into(),
            });
            let max_grad_sq = s
                .samples
                .iter()
                .map(|x| -x.slack)
                .fold(f64::NEG_INFINITY, f64::max);
            checks.push(check_le(
                "slack_is_negative_gradient",
                (s.min_slack + max_grad_sq).abs(),
                1e-12,
                "with A = 0 the slack equals -|grad psi|^2 exactly",
            ));
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "diamagnetic suite knows historical, step, gaussian; got {other}"
            )))
        }
    }
    Ok(checks)
}

fn projector_suite() -> Vec<Check> {
    let rep = planar::projector_checks(100, planar::PROJECTOR_SEED);
    vec![
        check_le(
            "idempotency",
            rep.idempotency,
            1e-14,
            "max |(P^2 - P)_ij|",
        ),
        check_le("hermiticity", rep.hermiticity, 1e-14, "max |(P - P*)_ij|"),
        check_le(
            "tensor_norm_halving",
            rep.norm_deviation,
            1e-12,
            "|P(u (x) xi)|^2 = |u|^2 |xi|^2 / 2 on 100 seeded unit pairs",
        ),
    ]
}

fn inequalities_suite(common: &Common) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let gaussian = RadialProfile::analytic_with_derivatives(
        "exp(-r^2/2)",
        vec![],
        |r| (-r * r / 2.0).exp(),
        |r| -r * (-r * r / 2.0).exp(),
        |r| (r * r - 1.0) * (-r * r / 2.0).exp(),
    );
    let exponential = RadialProfile::analytic_with_derivatives(
        "exp(-r)",
        vec![],
        |r| (-r).exp(),
        |r| -(-r).exp(),
        |r| (-r).exp(),
    );
    for dim in [Dim::Two, Dim::Three] {
        let c = inequalities::named_inequality(InequalityKind::Heisenberg, &gaussian, dim, common.tol)?;
        checks.push(check_le(
            &format!("heisenberg_gaussian_saturation_n{}", dim.n()),
            ((c.lhs - c.rhs) / c.rhs).abs(),
            1e-6,
            "the Gaussian is the optimizer",
        ));
    }
    let c = inequalities::named_inequality(InequalityKind::Hydrogen, &exponential, Dim::Two, common.tol)?;
    checks.push(check_le(
        "hydrogen_exponential_saturation_n2",
        ((c.lhs - c.rhs) / c.lhs).abs(),
        1e-6,
        "exp(-r) is the optimizer in two dimensions",
    ));
    let c = inequalities::named_inequality(InequalityKind::Hardy, &exponential, Dim::Three, common.tol)?;
    checks.push(Check {
        name: "hardy_strict_n3".into(),
        passed: c.slack > 0.0,
        measured: c.slack,
        threshold: 0.0,
        detail: "the constant is never attained".into(),
    });
    let battery = inequalities::random_profile_suite(100, inequalities::RANDOM_SUITE_SEED, 1e-9)?;
    let worst = battery
        .iter()
        .map(|r| r.slack / r.lhs.abs().max(1e-300))
        .fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "random_battery_400_cases".into(),
        passed: worst >= -1e-8,
        measured: worst,
        threshold: -1e-8,
        detail: "normalized slack of 100 seeded profiles x 4 inequalities".into(),
    });
    Ok(checks)
}

fn stability_suite(common: &Common) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // envelope below the split energy over the pinned grid
    let mut worst = f64::INFINITY;
    for p in [1.6, 1.75, 2.0] {
        for ai in 0..=20 {
            let alpha = ai as f64 * 0.05;
            for xi in 0..=40 {
                let x = xi as f64 * 0.25;
                let f = bounds::splitting_energy(p, 1.0, 1.0, alpha, x)?;
                let g = bounds::stability_envelope(p, 1.0, 1.0, x)?;
                worst = worst.min(f - g);
            }
        }
    }
    checks.push(Check {
        name: "envelope_under_split_energy".into(),
        passed: worst >= -1e-12,
        measured: worst,
        threshold: -1e-12,
        detail: "f_p(alpha, x) >= g_p(x) over alpha, x, p grid".into(),
    });

    // scaling behavior of the coupling ratio and the scaled energy
    let mode = modes::family_historical();
    let mut dev = 0.0f64;
    for n in [0.5, 2.0, 10.0] {
        let v = functionals::kl(&modes::rescale(&mode, n), 1.0, common.tol)?;
        dev = dev.max((v - 0.125).abs());
    }
    checks.push(check_le(
        "kl_rescale_invariance",
        dev,
        1e-8,
        "the ratio is blind to the scaling map",
    ));

    let base = functionals::scaled_energy(&mode, 1.0, 0.2, 1.5, 1.0, common.tol)?;
    let mut rel = 0.0f64;
    for n in [0.5, 3.0, 50.0] {
        let v = functionals::scaled_energy(&mode, 1.0, 0.2, 1.5, n, common.tol)? / (n * n);
        rel = rel.max(((v - base) / base.abs()).abs());
    }
    checks.push(check_le(
        "critical_scaled_energy_ratio",
        rel,
        1e-9,
        "E(n)/n^2 constant at the critical exponent",
    ));

    let e1 = functionals::scaled_energy(&mode, 1.0, 1.0, 1.0, 1.0, common.tol)?;
    let e10 = functionals::scaled_energy(&mode, 1.0, 1.0, 1.0, 10.0, common.tol)?;
    let e100 = functionals::scaled_energy(&mode, 1.0, 1.0, 1.0, 100.0, common.tol)?;
    checks.push(Check {
        name: "subcritical_energy_decreasing".into(),
        passed: e1 > e10 && e10 > e100 && e100 < 0.0,
        measured: e100,
        threshold: 0.0,
        detail: format!("E(1)={e1:.4}, E(10)={e10:.4}, E(100)={e100:.4}"),
    });
    Ok(checks)
}

fn el_suite(common: &Common, family: &str, b: Option<f64>) -> Result<Vec<Check>> {
    let (mode, _) = mode_for(family, b, 4.0)?;
    let res = functionals::el_residual(&mode, common.tol)?;
    let mut checks = Vec::new();

    // coefficients against the closed forms of the family
    let (alpha_ref, beta_ref, gamma_ref) = match family {
        "historical" => {
            let pi = std::f64::consts::PI;
            (8.0 * pi, 4.0 * pi * pi, 0.75 * pi)
        }
        _ => {
            let bval = b.unwrap_or(4.0);
            let m = functionals::step_magnetic32_closed(bval);
            let c_norm =
                functionals::step_coulomb_closed(bval) / functionals::step_l2_direct_closed(bval);
            (2.0 * m, 2.0 * m * c_norm, 1.5 * c_norm)
        }
    };
    checks.push(check_le(
        "coefficient_alpha",
        ((res.coefficients.alpha - alpha_ref) / alpha_ref).abs(),
        1e-8,
        "2 (int |B|^{3/2}) (int |psi|^2)",
    ));
    checks.push(check_le(
        "coefficient_beta",
        ((res.coefficients.beta - beta_ref) / beta_ref).abs(),
        1e-8,
        "2 (int |B|^{3/2}) (int |psi|^2/|x|)",
    ));
    checks.push(check_le(
        "coefficient_gamma",
        ((res.coefficients.gamma - gamma_ref) / gamma_ref).abs(),
        1e-8,
        "(3/2) (int |psi|^2/|x|) (int |psi|^2)",
    ));
    checks.push(Check {
        name: "residual_norm_positive".into(),
        passed: res.weighted_norm > 1e-3,
        measured: res.weighted_norm,
        threshold: 1e-3,
        detail: "neither family satisfies the optimality equation".into(),
    });
    if family == "step" {
        let (lo, hi) = res.excluded.unwrap_or((0.0, 0.0));
        checks.push(Check {
            name: "exclusion_window_reported".into(),
            passed: lo < 1.0 && hi > 1.0,
            measured: hi - lo,
            threshold: 0.0,
            detail: format!("window [{lo}, {hi}] around the field jump"),
        });
        // homogeneity: amplitude c multiplies the residual by c^4
        let bval = b.unwrap_or(4.0);
        let raw = functionals::el_residual(&modes::family_step_raw(bval)?, common.tol)?;
        let c = modes::family_step_raw(bval)?.lower_component().eval(0.5)
            / modes::family_step(bval)?.lower_component().eval(0.5);
        let ratio = raw.weighted_norm / res.weighted_norm;
        checks.push(check_le(
            "amplitude_homogeneity",
            ((ratio - c.powi(4)) / c.powi(4)).abs(),
            1e-6,
            "residual scales as the fourth power of the amplitude",
        ));
    }
    Ok(checks)
}
