//! Numerical verification of the generating radial inequality
//! `(int |grad psi|^2)(int |x|^2 g^2 |psi|^2) >= (1/4)(int [N g + |x| G'] |psi|^2)^2`
//! and its four named specializations: Heisenberg (G = 1), Hydrogen
//! (G = 1/r), Hardy (G = 1/r^2) and the linearized Sobolev inequality
//! (G = 1/(1+r^2)).
//!
//! Test functions are radial, so |grad psi| = |psi'(r)| and all integrals
//! are one-dimensional.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::{self, Dim, RadialProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    Heisenberg,
    Hydrogen,
    Hardy,
    LinSobolev,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 4] = [
        InequalityKind::Heisenberg,
        InequalityKind::Hydrogen,
        InequalityKind::Hardy,
        InequalityKind::LinSobolev,
    ];

    /// Smallest dimension the quadrature backend admits for this kind
    /// (Hardy and the linearized Sobolev inequality need N >= 3).
    pub fn minimal_dim(self) -> Dim {
        match self {
            InequalityKind::Heisenberg | InequalityKind::Hydrogen => Dim::Two,
            InequalityKind::Hardy | InequalityKind::LinSobolev => Dim::Three,
        }
    }

    pub fn admits(self, dim: Dim) -> bool {
        self.minimal_dim().n() <= dim.n()
    }

    pub fn label(self) -> &'static str {
        match self {
            InequalityKind::Heisenberg => "heisenberg",
            InequalityKind::Hydrogen => "hydrogen",
            InequalityKind::Hardy => "hardy",
            InequalityKind::LinSobolev => "lin_sobolev",
        }
    }
}

impl std::str::FromStr for InequalityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" => Ok(InequalityKind::Heisenberg),
            "hydrogen" => Ok(InequalityKind::Hydrogen),
            "hardy" => Ok(InequalityKind::Hardy),
            "lin_sobolev" | "lin-sobolev" => Ok(InequalityKind::LinSobolev),
            other => Err(Error::InvalidParameter(format!(
                "unknown inequality kind {other}"
            ))),
        }
    }
}

/// Both sides of an inequality and their gap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

fn grad_sq(psi: &RadialProfile, dim: Dim, tol: f64) -> Result<f64> {
    let d = radial::differentiate(psi, 1)?;
    radial::integrate_radial_fn(
        |r| {
            let v = d.eval(r);
            v * v
        },
        dim,
        tol,
    )
}

/// The generating inequality for an arbitrary admissible weight G.
/// Returns lhs = (int |grad psi|^2)(int r^2 G^2 psi^2),
/// rhs = (1/4)(int [N G + r G'] psi^2)^2.
pub fn lemma_check(
    psi: &RadialProfile,
    g: &RadialProfile,
    dim: Dim,
    tol: f64,
) -> Result<InequalityCheck> {
    let q = grad_sq(psi, dim, tol)?;
    let dg = radial::differentiate(g, 1)?;
    let moment = radial::integrate_radial_fn(
        |r| {
            let gv = g.eval(r);
            let pv = psi.eval(r);
            r * r * gv * gv * pv * pv
        },
        dim,
        tol,
    )?;
    let n = dim.n() as f64;
    let mixed = radial::integrate_radial_fn(
        |r| {
            let pv = psi.eval(r);
            (n * g.eval(r) + r * dg.eval(r)) * pv * pv
        },
        dim,
        tol,
    )?;
    let lhs = q * moment;
    let rhs = 0.25 * mixed * mixed;
    Ok(InequalityCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}

/// The optimizer of the quadratic in lambda behind the generating
/// inequality: `lambda* = int [N G + r G'] psi^2 / (2 int r^2 G^2 psi^2)`.
pub fn optimal_lambda(psi: &RadialProfile, g: &RadialProfile, dim: Dim, tol: f64) -> Result<f64> {
    let dg = radial::differentiate(g, 1)?;
    let n = dim.n() as f64;
    let mixed = radial::integrate_radial_fn(
        |r| {
            let pv = psi.eval(r);
            (n * g.eval(r) + r * dg.eval(r)) * pv * pv
        },
        dim,
        tol,
    )?;
    let moment = radial::integrate_radial_fn(
        |r| {
            let gv = g.eval(r);
            let pv = psi.eval(r);
            r * r * gv * gv * pv * pv
        },
        dim,
        tol,
    )?;
    if moment.abs() < 1e-300 {
        return Err(Error::ZeroFunction);
    }
    Ok(mixed / (2.0 * moment))
}

/// The non-negative quadratic `sum_k F_k` evaluated at a given lambda:
/// `int |grad psi|^2 + lambda^2 int r^2 G^2 psi^2 - lambda int [N G + r G'] psi^2`.
/// At lambda = lambda* this equals (lhs - rhs)/moment of [`lemma_check`].
pub fn quadratic_form(
    psi: &RadialProfile,
    g: &RadialProfile,
    dim: Dim,
    lambda: f64,
    tol: f64,
) -> Result<f64> {
    let q = grad_sq(psi, dim, tol)?;
    let dg = radial::differentiate(g, 1)?;
    let n = dim.n() as f64;
    let mixed = radial::integrate_radial_fn(
        |r| {
            let pv = psi.eval(r);
            (n * g.eval(r) + r * dg.eval(r)) * pv * pv
        },
        dim,
        tol,
    )?;
    let moment = radial::integrate_radial_fn(
        |r| {
            let gv = g.eval(r);
            let pv = psi.eval(r);
            r * r * gv * gv * pv * pv
        },
        dim,
        tol,
    )?;
    Ok(q + lambda * lambda * moment - lambda * mixed)
}

/// One of the four named inequalities, with psi normalized internally to
/// unit L^2 norm (the hydrogen form is only scale-consistent for normalized
/// functions).
pub fn named_inequality(
    kind: InequalityKind,
    psi: &RadialProfile,
    dim: Dim,
    tol: f64,
) -> Result<InequalityCheck> {
    if !kind.admits(dim) {
        return Err(Error::InvalidParameter(format!(
            "{} needs dimension >= {}, got {}",
            kind.label(),
            kind.minimal_dim().n(),
            dim.n()
        )));
    }
    let l2 = radial::integrate_radial_fn(
        |r| {
            let v = psi.eval(r);
            v * v
        },
        dim,
        tol,
    )?;
    if l2 < 1e-300 {
        return Err(Error::ZeroFunction);
    }
    let q = grad_sq(psi, dim, tol)? / l2;
    let n = dim.n() as f64;
    let weighted = |w: fn(f64) -> f64| -> Result<f64> {
        Ok(radial::integrate_radial_fn(
            |r| {
                let v = psi.eval(r);
                w(r) * v * v
            },
            dim,
            tol,
        )? / l2)
    };
    let (lhs, rhs) = match kind {
        InequalityKind::Heisenberg => {
            let moment = weighted(|r| r * r)?;
            (q * moment, n * n / 4.0)
        }
        InequalityKind::Hydrogen => {
            let coul = weighted(|r| 1.0 / r)?;
            (q, (n - 1.0) * (n - 1.0) / 4.0 * coul * coul)
        }
        InequalityKind::Hardy => {
            let inv_sq = weighted(|r| 1.0 / (r * r))?;
            (q, (n - 2.0) * (n - 2.0) / 4.0 * inv_sq)
        }
        InequalityKind::LinSobolev => {
            let lin = weighted(|r| {
                let d = 1.0 + r * r;
                1.0 / (d * d)
            })?;
            (q, n * (n - 2.0) * lin)
        }
    };
    Ok(InequalityCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}

/// Per-case entry of a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub kind: InequalityKind,
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

pub const RANDOM_SUITE_SEED: u64 = 0x1dea_11b5;

/// Battery of pseudo-random radial test functions `(a + b r) e^{-c r}` with
/// a, b in [0, 1] and c in [0.5, 2], run through all four named inequalities
/// at their minimal admissible dimension.
pub fn random_profile_suite(count: usize, seed: u64, tol: f64) -> Result<Vec<CaseReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count * InequalityKind::ALL.len());
    for _ in 0..count {
        let a: f64 = rng.gen_range(0.0..1.0);
        let b: f64 = rng.gen_range(0.0..1.0);
        let c: f64 = rng.gen_range(0.5..2.0);
        let psi = RadialProfile::analytic_with_derivatives(
            "random (a + b r) exp(-c r)",
            vec![a, b, c],
            move |r| (a + b * r) * (-c * r).exp(),
            move |r| (b - c * (a + b * r)) * (-c * r).exp(),
            move |r| (c * c * (a + b * r) - 2.0 * b * c) * (-c * r).exp(),
        );
        for kind in InequalityKind::ALL {
            let dim = kind.minimal_dim();
            let check = named_inequality(kind, &psi, dim, tol)?;
            out.push(CaseReport {
                kind,
                n: dim.n(),
                lhs: check.lhs,
                rhs: check.rhs,
                slack: check.slack,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-10;

    fn gaussian_half() -> RadialProfile {
        RadialProfile::analytic_with_derivatives(
            "exp(-r^2/2)",
            vec![],
            |r| (-r * r / 2.0).exp(),
            |r| -r * (-r * r / 2.0).exp(),
            |r| (r * r - 1.0) * (-r * r / 2.0).exp(),
        )
    }

    fn exp_decay() -> RadialProfile {
        RadialProfile::analytic_with_derivatives(
            "exp(-r)",
            vec![],
            |r| (-r).exp(),
            |r| -(-r).exp(),
            |r| (-r).exp(),
        )
    }

    #[test]
    fn gaussian_saturates_lemma_with_unit_weight() {
        let g = RadialProfile::analytic("one", vec![], |_| 1.0);
        let check = lemma_check(&gaussian_half(), &g, Dim::Two, TOL).unwrap();
        assert!((check.lhs - PI * PI).abs() < 1e-8, "{}", check.lhs);
        assert!((check.rhs - PI * PI).abs() < 1e-8, "{}", check.rhs);
        assert!(check.slack.abs() < 1e-8);
    }

    #[test]
    fn exponential_saturates_coulomb_weight() {
        let g = RadialProfile::analytic("1/r", vec![], |r| 1.0 / r);
        let check = lemma_check(&exp_decay(), &g, Dim::Two, TOL).unwrap();
        assert!((check.lhs - PI * PI / 4.0).abs() < 1e-8, "{}", check.lhs);
        assert!((check.rhs - PI * PI / 4.0).abs() < 1e-8, "{}", check.rhs);
    }

    #[test]
    fn lemma_strict_for_rational_weight() {
        let psi = RadialProfile::analytic("exp(-r^2)", vec![], |r| (-r * r).exp());
        let g = RadialProfile::analytic("1/(1+r^2)", vec![], |r| 1.0 / (1.0 + r * r));
        let check = lemma_check(&psi, &g, Dim::Three, TOL).unwrap();
        // frozen from an independent quadrature
        assert!((check.lhs - 2.3447905287).abs() < 1e-7, "{}", check.lhs);
        assert!((check.rhs - 2.1333364381).abs() < 1e-7, "{}", check.rhs);
        assert!(check.slack > 0.2);
    }

    #[test]
    fn optimal_lambda_gaussian_unit_weight() {
        let g = RadialProfile::analytic("one", vec![], |_| 1.0);
        let lam = optimal_lambda(&gaussian_half(), &g, Dim::Two, TOL).unwrap();
        assert!((lam - 1.0).abs() < 1e-9, "{lam}");
    }

    #[test]
    fn optimal_lambda_scaling() {
        // lambda*(psi(c .)) = c^2 lambda*(psi) for G = 1
        let g = RadialProfile::analytic("one", vec![], |_| 1.0);
        let base = optimal_lambda(&gaussian_half(), &g, Dim::Two, TOL).unwrap();
        let scaled_psi = RadialProfile::analytic("exp(-(2r)^2/2)", vec![], |r| {
            (-(2.0 * r) * (2.0 * r) / 2.0).exp()
        });
        let scaled = optimal_lambda(&scaled_psi, &g, Dim::Two, TOL).unwrap();
        assert!((scaled - 4.0 * base).abs() < 1e-8, "{scaled} vs {base}");
    }

    #[test]
    fn optimal_lambda_rejects_zero_function() {
        let g = RadialProfile::analytic("one", vec![], |_| 1.0);
        let zero = RadialProfile::analytic("zero", vec![], |_| 0.0);
        assert!(matches!(
            optimal_lambda(&zero, &g, Dim::Two, TOL),
            Err(Error::ZeroFunction)
        ));
    }

    #[test]
    fn quadratic_at_optimum_matches_slack() {
        let psi = exp_decay();
        let g = RadialProfile::analytic("1/(1+r^2)", vec![], |r| 1.0 / (1.0 + r * r));
        let check = lemma_check(&psi, &g, Dim::Two, TOL).unwrap();
        let lam = optimal_lambda(&psi, &g, Dim::Two, TOL).unwrap();
        let fk = quadratic_form(&psi, &g, Dim::Two, lam, TOL).unwrap();
        let moment = radial::integrate_radial_fn(
            |r| {
                let gv = 1.0 / (1.0 + r * r);
                let pv = psi.eval(r);
                r * r * gv * gv * pv * pv
            },
            Dim::Two,
            TOL,
        )
        .unwrap();
        // min of the quadratic times the moment equals lhs - rhs
        assert!(
            (fk * moment - check.slack).abs() < 1e-8,
            "{} vs {}",
            fk * moment,
            check.slack
        );
    }

    #[test]
    fn named_hydrogen_saturated_by_exponential() {
        let check = named_inequality(InequalityKind::Hydrogen, &exp_decay(), Dim::Two, TOL).unwrap();
        assert!((check.lhs - 1.0).abs() < 1e-7, "{}", check.lhs);
        assert!((check.rhs - 1.0).abs() < 1e-7, "{}", check.rhs);
    }

    #[test]
    fn named_heisenberg_gaussian_three_dim() {
        let check =
            named_inequality(InequalityKind::Heisenberg, &gaussian_half(), Dim::Three, TOL)
                .unwrap();
        assert!((check.lhs - 2.25).abs() < 1e-8, "{}", check.lhs);
        assert_eq!(check.rhs, 2.25);
    }

    #[test]
    fn named_hardy_strict_for_exponential() {
        let check = named_inequality(InequalityKind::Hardy, &exp_decay(), Dim::Three, TOL).unwrap();
        assert!((check.lhs - 1.0).abs() < 1e-7);
        assert!((check.rhs - 0.5).abs() < 1e-7);
        assert!(check.slack > 0.49);
    }

    #[test]
    fn named_rejects_low_dimension() {
        assert!(named_inequality(InequalityKind::Hardy, &exp_decay(), Dim::Two, TOL).is_err());
        assert!(named_inequality(InequalityKind::LinSobolev, &exp_decay(), Dim::Two, TOL).is_err());
    }
}
