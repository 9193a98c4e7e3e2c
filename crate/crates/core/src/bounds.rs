//! Closed-form bound calculators: Sobolev constants from spectral
//! one-bound-state constants, the upper and lower critical couplings, the
//! 3D critical-charge bound, and the stability envelope obtained by
//! optimizing the kinetic-energy split.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::Dim;

pub const DEFAULT_L2: f64 = 0.09;
pub const DEFAULT_L3: f64 = 0.0135;
pub const DEFAULT_FINE_STRUCTURE: f64 = 1.0 / 137.035999;

/// Lower bound on the Sobolev constant S_N from the one-bound-state
/// constant L_N:
/// `S_N >= N^{N/(N-1)} / ( (1+N)^{(N+1)/(N-1)} L_N^{2/(N-1)} )`.
/// For N = 2 this specializes to `4 / (27 L_2^2)`.
pub fn sobolev_lower(dim: Dim, l_n: f64) -> Result<f64> {
    if !(l_n > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "spectral constant must be positive, got {l_n}"
        )));
    }
    let n = dim.n() as f64;
    Ok(n.powf(n / (n - 1.0))
        / ((1.0 + n).powf((n + 1.0) / (n - 1.0)) * l_n.powf(2.0 / (n - 1.0))))
}

/// Upper bound on the critical coupling: `K_c <= z / sqrt(2 S_2)`.
pub fn kc_upper(z: f64, s2: f64) -> f64 {
    z / (2.0 * s2).sqrt()
}

/// Coupling above which the energy is coercive: `K_u = 2 z / sqrt(S_2)`
/// (the p = 3/2 case of `2z / D_q^{p/q}` with q = 3).
pub fn ku(z: f64, s2: f64) -> f64 {
    2.0 * z / s2.sqrt()
}

/// 3D critical-charge lower bound `z_c >= (3/2)^2 S_3 / (8 pi alpha^2)`.
pub fn zc_3d(s3: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fine-structure constant must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(2.25 * s3 / (8.0 * std::f64::consts::PI * alpha * alpha))
}

/// The split energy `f_p(alpha, x) = (1 - alpha) x^2 + C alpha^p x^{2p-2} - 2 z x`
/// whose minimum over alpha in [0, 1] is the envelope [`stability_envelope`].
pub fn splitting_energy(p: f64, c: f64, z: f64, alpha: f64, x: f64) -> Result<f64> {
    validate_envelope_params(p, c)?;
    Ok((1.0 - alpha) * x * x + c * alpha.powf(p) * x.powf(2.0 * p - 2.0) - 2.0 * z * x)
}

/// The coercive envelope
/// `g_p(x) = (x^2 - C' x^{2/(p-1)} - 2zx)` where `x^{2(2-p)} <= pC`, and
/// `C x^{2(p-1)} - 2zx` beyond, with
/// `C' = (p-1) / ( p^{p/(p-1)} C^{1/(p-1)} )`.
pub fn stability_envelope(p: f64, c: f64, z: f64, x: f64) -> Result<f64> {
    validate_envelope_params(p, c)?;
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "envelope argument must be non-negative, got {x}"
        )));
    }
    let c_prime = (p - 1.0) / (p.powf(p / (p - 1.0)) * c.powf(1.0 / (p - 1.0)));
    if x.powf(2.0 * (2.0 - p)) <= p * c {
        Ok(x * x - c_prime * x.powf(2.0 / (p - 1.0)) - 2.0 * z * x)
    } else {
        Ok(c * x.powf(2.0 * (p - 1.0)) - 2.0 * z * x)
    }
}

fn validate_envelope_params(p: f64, c: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "envelope exponent must exceed 1, got {p}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "envelope constant must be positive, got {c}"
        )));
    }
    Ok(())
}

/// All bound constants for one choice of inputs.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub s2: f64,
    pub s3: f64,
    pub kc_upper_over_z: f64,
    pub ku_over_z: f64,
    pub zc3d: f64,
    pub inputs: BoundInputs,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundInputs {
    pub l2: f64,
    pub l3: f64,
    pub fine_structure: f64,
    pub z: f64,
}

pub fn bound_report(z: f64, l2: f64, l3: f64, alpha: f64) -> Result<BoundReport> {
    let s2 = sobolev_lower(Dim::Two, l2)?;
    let s3 = sobolev_lower(Dim::Three, l3)?;
    Ok(BoundReport {
        s2,
        s3,
        kc_upper_over_z: kc_upper(1.0, s2),
        ku_over_z: ku(1.0, s2),
        zc3d: zc_3d(s3, alpha)?,
        inputs: BoundInputs {
            l2,
            l3,
            fine_structure: alpha,
            z,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sobolev_two_dimensional_form() {
        // N = 2: 4 / (27 L^2)
        let v = sobolev_lower(Dim::Two, 0.09).unwrap();
        assert!((v - 4.0 / (27.0 * 0.0081)).abs() < 1e-12);
        assert!((v - 18.2899).abs() < 1e-3, "{v}");
        // N = 3: 3^{3/2} / (16 L)
        let w = sobolev_lower(Dim::Three, 0.0135).unwrap();
        assert!((w - 3.0f64.powf(1.5) / (16.0 * 0.0135)).abs() < 1e-12);
        assert!((w - 24.0563).abs() < 1e-3, "{w}");
    }

    #[test]
    fn sobolev_monotone_in_constant() {
        let a = sobolev_lower(Dim::Two, 0.08).unwrap();
        let b = sobolev_lower(Dim::Two, 0.09).unwrap();
        let c = sobolev_lower(Dim::Two, 0.10).unwrap();
        assert!(a > b && b > c);
        assert!(sobolev_lower(Dim::Two, 0.0).is_err());
    }

    #[test]
    fn kc_upper_values_and_identity() {
        assert!((kc_upper(1.0, 18.28) - 0.165385).abs() < 1e-5);
        assert!((kc_upper(1.0, 18.29) - 0.16534).abs() < 1e-5);
        assert!((kc_upper(2.0, 18.28) - 2.0 * kc_upper(1.0, 18.28)).abs() < 1e-15);
        // algebraic identity kc * sqrt(2 S2) = z
        for s2 in [10.0, 18.29, 40.0] {
            assert!((kc_upper(1.3, s2) * (2.0 * s2).sqrt() - 1.3).abs() < 1e-13);
        }
    }

    #[test]
    fn ku_exceeds_kc_upper_by_two_sqrt_two() {
        assert!((ku(1.0, 18.28) - 0.467780).abs() < 1e-5);
        assert_eq!(ku(0.0, 18.28), 0.0);
        for s2 in [5.0, 18.29, 100.0] {
            let ratio = ku(1.0, s2) / kc_upper(1.0, s2);
            assert!((ratio - 2.0 * 2.0f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn zc3d_values() {
        let s3 = sobolev_lower(Dim::Three, 0.0135).unwrap();
        let v = zc_3d(s3, 1.0 / 137.036).unwrap();
        assert!((v - 40442.7).abs() < 1.0, "{v}");
        let w = zc_3d(s3, 1.0 / 137.0).unwrap();
        assert!((w - 40421.4).abs() < 1.0, "{w}");
        assert!((zc_3d(2.0 * s3, 1.0 / 137.0).unwrap() - 2.0 * w).abs() < 1e-9);
        assert!(zc_3d(s3, 1.5).is_err());
    }

    #[test]
    fn splitting_energy_at_zero_alpha() {
        // f_p(0, x) = x^2 - 2 z x
        for x in [0.0, 0.5, 2.0, 7.5] {
            let v = splitting_energy(2.0, 1.0, 1.0, 0.0, x).unwrap();
            assert!((v - (x * x - 2.0 * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn envelope_is_coercive_for_quadratic_case() {
        let g10 = stability_envelope(2.0, 1.0, 1.0, 10.0).unwrap();
        let g100 = stability_envelope(2.0, 1.0, 1.0, 100.0).unwrap();
        assert!(g100 > g10 && g10 > 0.0, "{g10} {g100}");
        assert!(stability_envelope(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(splitting_energy(0.8, 1.0, 1.0, 0.5, 1.0).is_err());
    }
}
