//! Radial zero modes of the two-dimensional Dirac-Weyl operator.
//!
//! Every mode here has the spinor form (0, f(r)) with a purely tangential
//! vector potential A(x) = a(r) e_theta. The generating potential phi obeys
//! `Laplacian(phi) = B` with `a = phi'` and `f = exp(-phi)`, so
//! `sigma . (p + A) psi = 0` holds identically: the radial equation reduces
//! to f' + a f = 0.
//!
//! Sign convention: phi = log(1 + r^2) for B = 4/(1+r^2)^2 with the spinor
//! decaying, which fixes `Delta phi = +B` and A = (-d2 phi, d1 phi).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::radial::{self, Dim, RadialProfile};

/// A zero mode bundle: lower spinor component f (the upper component is
/// identically zero), tangential potential magnitude a, field profile B,
/// total flux divided by 2*pi, and whether f carries unit L^2 norm.
#[derive(Debug, Clone)]
pub struct ZeroMode {
    f: RadialProfile,
    a: RadialProfile,
    field: RadialProfile,
    flux: f64,
    normalized: bool,
    /// Radius at which B jumps, if any; finite-difference and derivative
    /// checks exclude a small band around it.
    kink: Option<f64>,
}

impl ZeroMode {
    pub fn lower_component(&self) -> &RadialProfile {
        &self.f
    }

    pub fn tangential_potential(&self) -> &RadialProfile {
        &self.a
    }

    pub fn field(&self) -> &RadialProfile {
        &self.field
    }

    /// (1/2pi) * integral of B over the plane.
    pub fn flux(&self) -> f64 {
        self.flux
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn kink_radius(&self) -> Option<f64> {
        self.kink
    }
}

/// Generating potential phi for a field B, with Delta(phi) = B.
#[derive(Debug, Clone)]
pub struct PotentialProfile {
    phi: RadialProfile,
    source: RadialProfile,
}

impl PotentialProfile {
    pub fn phi(&self) -> &RadialProfile {
        &self.phi
    }

    pub fn source(&self) -> &RadialProfile {
        &self.source
    }
}

/// Cumulative flux integral (1/r) int_0^r B(s) s ds, i.e. the tangential
/// potential magnitude generated by the field.
fn tangential_from_field(field: RadialProfile, tol: f64) -> impl Fn(f64) -> f64 {
    move |r: f64| {
        let inner =
            radial::integrate_radial_window_fn(|u| field.eval(u), Dim::Two, None, Some(r), tol)
                .unwrap_or(f64::NAN)
                / (2.0 * std::f64::consts::PI);
        inner / r
    }
}

/// phi(r) = int_0^r B(u) u log(r/u) du, obtained from the double integral of
/// phi' by swapping the order of integration. Anchored so phi(0+) -> 0 for
/// bounded fields.
fn potential_value(field: &RadialProfile, r: f64, tol: f64) -> f64 {
    radial::integrate_radial_window_fn(
        |u| field.eval(u) * (r / u).ln(),
        Dim::Two,
        None,
        Some(r),
        tol,
    )
    .unwrap_or(f64::NAN)
        / (2.0 * std::f64::consts::PI)
}

/// Builds the generating potential of a radial field by cumulative
/// quadrature. The returned profile carries phi' = a(r) as its exact first
/// derivative.
pub fn potential_from_field(field: &RadialProfile, tol: f64) -> Result<PotentialProfile> {
    let f1 = field.clone();
    let f2 = field.clone();
    let a_closure = tangential_from_field(f1, tol);
    let phi = RadialProfile::Analytic {
        name: format!("potential({})", field.name()),
        params: vec![],
        eval: Arc::new(move |r| potential_value(&f2, r, tol)),
        d1: Some(Arc::new(a_closure)),
        d2: None,
    };
    Ok(PotentialProfile {
        phi,
        source: field.clone(),
    })
}

/// The explicit flux-to-mode map: given a radial field B with flux > 1,
/// returns the zero mode with f = C exp(-phi), a = phi'. Divergent flux or
/// flux <= 1 are rejected.
pub fn ac_construct(field: &RadialProfile, normalize: bool, tol: f64) -> Result<ZeroMode> {
    let flux = radial::integrate_radial(field, Dim::Two, tol)? / (2.0 * std::f64::consts::PI);
    if !flux.is_finite() {
        return Err(Error::DivergenceSuspected {
            partial: flux,
            last_ratio: f64::INFINITY,
        });
    }
    if flux <= 1.0 {
        return Err(Error::FluxTooSmall { flux });
    }
    let potential = potential_from_field(field, tol)?;
    let phi = potential.phi().clone();
    let a = radial::differentiate(&phi, 1)?;

    let phi_for_norm = phi.clone();
    let scale = if normalize {
        let l2 = radial::integrate_radial_fn(
            |r| (-2.0 * phi_for_norm.eval(r)).exp(),
            Dim::Two,
            tol,
        )?;
        1.0 / l2.sqrt()
    } else {
        1.0
    };
    let phi_f = phi.clone();
    let f = RadialProfile::analytic(
        format!("exp(-potential({}))", field.name()),
        vec![scale],
        move |r| scale * (-phi_f.eval(r)).exp(),
    );
    Ok(ZeroMode {
        f,
        a,
        field: field.clone(),
        flux,
        normalized: normalize,
        kink: None,
    })
}

/// The rational zero mode: f = (1/sqrt(pi)) / (1 + r^2),
/// a = 2r / (1 + r^2), B = 4 / (1 + r^2)^2, flux 2, normalized.
pub fn family_historical() -> ZeroMode {
    let c = 1.0 / std::f64::consts::PI.sqrt();
    let f = RadialProfile::analytic_with_derivatives(
        "historical f",
        vec![c],
        move |r| c / (1.0 + r * r),
        move |r| {
            let d = 1.0 + r * r;
            -2.0 * c * r / (d * d)
        },
        move |r| {
            let d = 1.0 + r * r;
            c * (6.0 * r * r - 2.0) / (d * d * d)
        },
    );
    let a = RadialProfile::analytic_with_derivatives(
        "historical a",
        vec![],
        |r| 2.0 * r / (1.0 + r * r),
        |r| {
            let d = 1.0 + r * r;
            2.0 * (1.0 - r * r) / (d * d)
        },
        |r| {
            let d = 1.0 + r * r;
            4.0 * r * (r * r - 3.0) / (d * d * d)
        },
    );
    let field = RadialProfile::analytic_with_derivatives(
        "historical B",
        vec![],
        |r| {
            let d = 1.0 + r * r;
            4.0 / (d * d)
        },
        |r| {
            let d = 1.0 + r * r;
            -16.0 * r / (d * d * d)
        },
        |r| {
            let d = 1.0 + r * r;
            16.0 * (5.0 * r * r - 1.0) / (d * d * d * d)
        },
    );
    ZeroMode {
        f,
        a,
        field,
        flux: 2.0,
        normalized: true,
        kink: None,
    }
}

/// Power family f = C / (1 + r^beta)^alpha with phi = alpha log(1 + r^beta),
/// B = alpha beta^2 r^{beta-2} / (1 + r^beta)^2 and flux alpha*beta. Requires
/// alpha*beta > 1 for square integrability.
pub fn family_power(alpha: f64, beta: f64) -> Result<ZeroMode> {
    family_power_tol(alpha, beta, radial::DEFAULT_TOL)
}

pub fn family_power_tol(alpha: f64, beta: f64, tol: f64) -> Result<ZeroMode> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "power family needs alpha > 0 and beta > 0, got ({alpha}, {beta})"
        )));
    }
    if alpha * beta <= 1.0 {
        return Err(Error::NotSquareIntegrable(format!(
            "power family needs alpha*beta > 1, got {}",
            alpha * beta
        )));
    }
    let l2 = radial::integrate_radial_fn(
        |r| (1.0 + r.powf(beta)).powf(-2.0 * alpha),
        Dim::Two,
        tol,
    )?;
    let c = 1.0 / l2.sqrt();
    let f = RadialProfile::analytic_with_derivatives(
        "power f",
        vec![alpha, beta, c],
        move |r| c * (1.0 + r.powf(beta)).powf(-alpha),
        move |r| {
            let d = 1.0 + r.powf(beta);
            -c * alpha * beta * r.powf(beta - 1.0) * d.powf(-alpha - 1.0)
        },
        move |r| {
            let rb = r.powf(beta);
            let d = 1.0 + rb;
            c * alpha
                * beta
                * r.powf(beta - 2.0)
                * d.powf(-alpha - 2.0)
                * ((alpha + 1.0) * beta * rb - (beta - 1.0) * d)
        },
    );
    let a = RadialProfile::analytic_with_derivatives(
        "power a",
        vec![alpha, beta],
        move |r| {
            let rb = r.powf(beta);
            alpha * beta * rb / (r * (1.0 + rb))
        },
        move |r| {
            let rb = r.powf(beta);
            let d = 1.0 + rb;
            alpha * beta * r.powf(beta - 2.0) * ((beta - 1.0) - rb) / (d * d)
        },
        move |r| {
            let rb = r.powf(beta);
            let d = 1.0 + rb;
            alpha * beta * r.powf(beta - 3.0)
                * ((beta - 1.0) * (beta - 2.0)
                    + (-beta * beta - 3.0 * beta + 4.0) * rb
                    + 2.0 * rb * rb)
                / (d * d * d)
        },
    );
    let field = RadialProfile::analytic("power B", vec![alpha, beta], move |r| {
        let rb = r.powf(beta);
        let d = 1.0 + rb;
        alpha * beta * beta * r.powf(beta - 2.0) / (d * d)
    });
    Ok(ZeroMode {
        f,
        a,
        field,
        flux: alpha * beta,
        normalized: true,
        kink: None,
    })
}

/// Closed-form L^2 norm of the unnormalized step-field spinor,
/// `(2pi/b)(1 - e^{-b/2}) + 2pi e^{-b/2}/(b - 2)`.
pub fn step_l2_unnormalized(b: f64) -> f64 {
    let pi = std::f64::consts::PI;
    (2.0 * pi / b) * (1.0 - (-b / 2.0).exp()) + 2.0 * pi * (-b / 2.0).exp() / (b - 2.0)
}

/// Step field B = b on the unit disk, zero outside; requires b > 2 so the
/// r^{-b/2} tail of the spinor is square integrable.
pub fn family_step(b: f64) -> Result<ZeroMode> {
    family_step_scaled(b, true)
}

/// Step-field mode with the spinor amplitude of the displayed piecewise form
/// (C = 1) instead of unit L^2 norm.
pub fn family_step_raw(b: f64) -> Result<ZeroMode> {
    family_step_scaled(b, false)
}

fn family_step_scaled(b: f64, normalize: bool) -> Result<ZeroMode> {
    if b <= 2.0 {
        return Err(Error::NotSquareIntegrable(format!(
            "step field needs b > 2, got {b}"
        )));
    }
    let c = if normalize {
        1.0 / step_l2_unnormalized(b).sqrt()
    } else {
        1.0
    };
    let f = RadialProfile::analytic_with_derivatives(
        "step f",
        vec![b, c],
        move |r| {
            if r <= 1.0 {
                c * (-b * r * r / 4.0).exp()
            } else {
                c * (-b / 4.0).exp() * r.powf(-b / 2.0)
            }
        },
        move |r| {
            if r <= 1.0 {
                -c * (b * r / 2.0) * (-b * r * r / 4.0).exp()
            } else {
                -c * (b / 2.0) * (-b / 4.0).exp() * r.powf(-b / 2.0 - 1.0)
            }
        },
        move |r| {
            if r <= 1.0 {
                c * (b / 2.0) * (b * r * r / 2.0 - 1.0) * (-b * r * r / 4.0).exp()
            } else {
                c * (b / 2.0) * (b / 2.0 + 1.0) * (-b / 4.0).exp() * r.powf(-b / 2.0 - 2.0)
            }
        },
    );
    let a = RadialProfile::analytic_with_derivatives(
        "step a",
        vec![b],
        move |r| if r <= 1.0 { b * r / 2.0 } else { b / (2.0 * r) },
        move |r| if r <= 1.0 { b / 2.0 } else { -b / (2.0 * r * r) },
        move |r| if r <= 1.0 { 0.0 } else { b / (r * r * r) },
    );
    let field = RadialProfile::analytic("step B", vec![b], move |r| {
        if r <= 1.0 {
            b
        } else {
            0.0
        }
    });
    Ok(ZeroMode {
        f,
        a,
        field,
        flux: b / 2.0,
        normalized: normalize,
        kink: Some(1.0),
    })
}

/// The scaling map psi_n(x) = n psi(nx), a_n(r) = n a(nr),
/// B_n(r) = n^2 B(nr). Preserves the L^2 norm and the flux.
pub fn rescale(mode: &ZeroMode, n: f64) -> ZeroMode {
    assert!(n > 0.0, "rescale factor must be positive");
    let f0 = mode.f.clone();
    let a0 = mode.a.clone();
    let b0 = mode.field.clone();
    let f = RadialProfile::analytic(
        format!("rescale({}, {n})", f0.name()),
        vec![n],
        move |r| n * f0.eval(n * r),
    );
    let a = RadialProfile::analytic(
        format!("rescale({}, {n})", a0.name()),
        vec![n],
        move |r| n * a0.eval(n * r),
    );
    let field = RadialProfile::analytic(
        format!("rescale({}, {n})", b0.name()),
        vec![n],
        move |r| n * n * b0.eval(n * r),
    );
    ZeroMode {
        f,
        a,
        field,
        flux: mode.flux,
        normalized: mode.normalized,
        kink: mode.kink.map(|k| k / n),
    }
}

/// Rescales f to unit L^2 norm by quadrature. Idempotent up to the
/// quadrature tolerance.
pub fn normalize(mode: &ZeroMode, tol: f64) -> Result<ZeroMode> {
    let f0 = mode.f.clone();
    let l2 = radial::integrate_radial_fn(|r| f0.eval(r) * f0.eval(r), Dim::Two, tol)?;
    let scale = 1.0 / l2.sqrt();
    let f = RadialProfile::analytic(
        format!("normalized({})", f0.name()),
        vec![scale],
        move |r| scale * f0.eval(r),
    );
    Ok(ZeroMode {
        f,
        a: mode.a.clone(),
        field: mode.field.clone(),
        flux: mode.flux,
        normalized: true,
        kink: mode.kink,
    })
}
