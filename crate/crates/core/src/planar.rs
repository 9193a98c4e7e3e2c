//! Independent verification on a Cartesian grid: the Dirac-Weyl residual by
//! second-order central differences, the pointwise improved diamagnetic
//! inequality for zero modes, and the 4x4 projector identities.
//!
//! All norms exclude a one-cell margin so one-sided stencils never pollute
//! convergence-rate measurements; modes with a field jump additionally
//! exclude the annulus |r - r_jump| < 2h.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::ZeroMode;
use crate::radial::RadialProfile;

/// Radius used to evaluate radial profiles at the origin node.
const ORIGIN_EPS: f64 = 1e-12;

/// Uniform, origin-centered grid samples of the two-component spinor, the
/// vector potential, and the field.
#[derive(Debug, Clone)]
pub struct PlanarFieldSet {
    half_width: f64,
    resolution: usize,
    spacing: f64,
    psi: Vec<[Complex64; 2]>,
    pot: Vec<[f64; 2]>,
    field: Vec<f64>,
    kink: Option<f64>,
}

pub const MIN_RESOLUTION: usize = 65;

impl PlanarFieldSet {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.resolution + j
    }

    /// Coordinate of node index k along either axis.
    fn coord(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.spacing
    }

    pub fn spinor(&self, i: usize, j: usize) -> [Complex64; 2] {
        self.psi[self.idx(i, j)]
    }

    pub fn potential(&self, i: usize, j: usize) -> [f64; 2] {
        self.pot[self.idx(i, j)]
    }

    pub fn field_at(&self, i: usize, j: usize) -> f64 {
        self.field[self.idx(i, j)]
    }

    /// Whether an interior node participates in norms: one-cell margin plus
    /// the jump annulus |r - k| < 2h when the sampled mode has a field jump.
    fn included(&self, i: usize, j: usize) -> bool {
        let m = self.resolution;
        if i == 0 || j == 0 || i == m - 1 || j == m - 1 {
            return false;
        }
        if let Some(k) = self.kink {
            let r = (self.coord(i).powi(2) + self.coord(j).powi(2)).sqrt();
            if (r - k).abs() < 2.0 * self.spacing {
                return false;
            }
        }
        true
    }

    /// Gauge-shifted copy: A -> A + (c, 0) and psi -> e^{-i c x1} psi.
    pub fn gauge_transformed(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.resolution {
            let phase = Complex64::from_polar(1.0, -c * self.coord(i));
            for j in 0..self.resolution {
                let k = self.idx(i, j);
                out.psi[k] = [self.psi[k][0] * phase, self.psi[k][1] * phase];
                out.pot[k][0] += c;
            }
        }
        out
    }

    /// Copy with the vector potential negated (no longer a zero mode).
    pub fn negated_potential(&self) -> Self {
        let mut out = self.clone();
        for v in &mut out.pot {
            v[0] = -v[0];
            v[1] = -v[1];
        }
        out
    }
}

fn validate_grid(l: f64, m: usize) -> Result<()> {
    if !(l > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "half-width must be positive, got {l}"
        )));
    }
    if m < MIN_RESOLUTION || m % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be odd and at least {MIN_RESOLUTION}, got {m}"
        )));
    }
    Ok(())
}

/// Samples a mode on the grid: psi = (0, f(|x|)),
/// A = a(|x|) (-x2/|x|, x1/|x|), B = B(|x|); at the origin node A = 0 and f
/// takes its r -> 0 limit.
pub fn sample(mode: &ZeroMode, l: f64, m: usize) -> Result<PlanarFieldSet> {
    let fs = sample_parts(
        mode.lower_component(),
        Some(mode.tangential_potential()),
        Some(mode.field()),
        mode.kink_radius(),
        l,
        m,
    )?;
    Ok(fs)
}

/// Samples a bare scalar profile as the lower spinor component with A = 0
/// and B = 0 (not a zero mode; used to falsify zero-mode-only inequalities).
pub fn sample_scalar(profile: &RadialProfile, l: f64, m: usize) -> Result<PlanarFieldSet> {
    sample_parts(profile, None, None, None, l, m)
}

fn sample_parts(
    f: &RadialProfile,
    a: Option<&RadialProfile>,
    b: Option<&RadialProfile>,
    kink: Option<f64>,
    l: f64,
    m: usize,
) -> Result<PlanarFieldSet> {
    validate_grid(l, m)?;
    let spacing = 2.0 * l / (m - 1) as f64;
    let mut psi = Vec::with_capacity(m * m);
    let mut pot = Vec::with_capacity(m * m);
    let mut field = Vec::with_capacity(m * m);
    for i in 0..m {
        let x = -l + i as f64 * spacing;
        for j in 0..m {
            let y = -l + j as f64 * spacing;
            let r = (x * x + y * y).sqrt();
            let re = r.max(ORIGIN_EPS);
            let fv = f.eval(re);
            let (a1, a2) = match a {
                Some(ap) if r > 0.0 => {
                    let av = ap.eval(r);
                    (-av * y / r, av * x / r)
                }
                _ => (0.0, 0.0),
            };
            let bv = match b {
                Some(bp) => bp.eval(re),
                None => 0.0,
            };
            if !(fv.is_finite() && a1.is_finite() && a2.is_finite() && bv.is_finite()) {
                return Err(Error::NonEvaluable { x, y });
            }
            psi.push([Complex64::new(0.0, 0.0), Complex64::new(fv, 0.0)]);
            pot.push([a1, a2]);
            field.push(bv);
        }
    }
    Ok(PlanarFieldSet {
        half_width: l,
        resolution: m,
        spacing,
        psi,
        pot,
        field,
        kink,
    })
}

/// Central-difference application of `sigma . (p + A)` to the sampled
/// spinor at an interior node. With sigma_1, sigma_2 the first two Pauli
/// matrices and p = -i grad:
/// `(D psi)_1 = -i d1 psi_2 - d2 psi_2 + (A1 - i A2) psi_2`
/// `(D psi)_2 = -i d1 psi_1 + d2 psi_1 + (A1 + i A2) psi_1`.
fn dirac_at(fs: &PlanarFieldSet, i: usize, j: usize) -> [Complex64; 2] {
    let h2 = 2.0 * fs.spacing;
    let im = Complex64::new(0.0, 1.0);
    let dx = |c: usize| {
        let plus = fs.psi[fs.idx(i + 1, j)][c];
        let minus = fs.psi[fs.idx(i - 1, j)][c];
        (plus - minus) / h2
    };
    let dy = |c: usize| {
        let plus = fs.psi[fs.idx(i, j + 1)][c];
        let minus = fs.psi[fs.idx(i, j - 1)][c];
        (plus - minus) / h2
    };
    let [a1, a2] = fs.pot[fs.idx(i, j)];
    let [p1, p2] = fs.psi[fs.idx(i, j)];
    let d1 = -im * dx(1) - dy(1) + Complex64::new(a1, -a2) * p2;
    let d2 = -im * dx(0) + dy(0) + Complex64::new(a1, a2) * p1;
    [d1, d2]
}

/// Discrete L^2 norm of `sigma . (p + A) psi` over included interior nodes.
/// For a true zero mode this is pure truncation error, O(h^2).
pub fn pauli_residual(fs: &PlanarFieldSet) -> f64 {
    let mut acc = 0.0;
    for i in 1..fs.resolution - 1 {
        for j in 1..fs.resolution - 1 {
            if !fs.included(i, j) {
                continue;
            }
            let [d1, d2] = dirac_at(fs, i, j);
            acc += d1.norm_sqr() + d2.norm_sqr();
        }
    }
    (acc * fs.spacing * fs.spacing).sqrt()
}

/// Discrete L^2 norm of the spinor gradient over the same node set.
pub fn gradient_norm(fs: &PlanarFieldSet) -> f64 {
    let h2 = 2.0 * fs.spacing;
    let mut acc = 0.0;
    for i in 1..fs.resolution - 1 {
        for j in 1..fs.resolution - 1 {
            if !fs.included(i, j) {
                continue;
            }
            for c in 0..2 {
                let dx = (fs.psi[fs.idx(i + 1, j)][c] - fs.psi[fs.idx(i - 1, j)][c]) / h2;
                let dy = (fs.psi[fs.idx(i, j + 1)][c] - fs.psi[fs.idx(i, j - 1)][c]) / h2;
                acc += dx.norm_sqr() + dy.norm_sqr();
            }
        }
    }
    (acc * fs.spacing * fs.spacing).sqrt()
}

/// One sample of the pointwise diamagnetic slack
/// `s(x) = |(p + A) psi|^2 - 2 |grad |psi||^2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlackSample {
    pub x1: f64,
    pub x2: f64,
    pub slack: f64,
}

#[derive(Debug, Clone)]
pub struct SlackField {
    pub min_slack: f64,
    pub samples: Vec<SlackSample>,
}

/// Pointwise slack of the improved diamagnetic inequality for zero modes.
/// Zero modes satisfy s >= -O(h^2); the rational mode saturates it, and a
/// scalar profile with A = 0 violates it by -|grad psi|^2.
pub fn diamagnetic_slack(fs: &PlanarFieldSet) -> SlackField {
    let h2 = 2.0 * fs.spacing;
    let mut samples = Vec::new();
    let mut min_slack = f64::INFINITY;
    // |psi| sampled once
    let modulus: Vec<f64> = fs
        .psi
        .iter()
        .map(|s| (s[0].norm_sqr() + s[1].norm_sqr()).sqrt())
        .collect();
    for i in 1..fs.resolution - 1 {
        for j in 1..fs.resolution - 1 {
            if !fs.included(i, j) {
                continue;
            }
            let [a1, a2] = fs.pot[fs.idx(i, j)];
            let mut kinetic = 0.0;
            for c in 0..2 {
                let dx = (fs.psi[fs.idx(i + 1, j)][c] - fs.psi[fs.idx(i - 1, j)][c]) / h2;
                let dy = (fs.psi[fs.idx(i, j + 1)][c] - fs.psi[fs.idx(i, j - 1)][c]) / h2;
                let p = fs.psi[fs.idx(i, j)][c];
                // |(-i d1 + A1) psi_c|^2 + |(-i d2 + A2) psi_c|^2
                let t1 = -Complex64::new(0.0, 1.0) * dx + a1 * p;
                let t2 = -Complex64::new(0.0, 1.0) * dy + a2 * p;
                kinetic += t1.norm_sqr() + t2.norm_sqr();
            }
            let gx = (modulus[fs.idx(i + 1, j)] - modulus[fs.idx(i - 1, j)]) / h2;
            let gy = (modulus[fs.idx(i, j + 1)] - modulus[fs.idx(i, j - 1)]) / h2;
            let slack = kinetic - 2.0 * (gx * gx + gy * gy);
            min_slack = min_slack.min(slack);
            samples.push(SlackSample {
                x1: fs.coord(i),
                x2: fs.coord(j),
                slack,
            });
        }
    }
    SlackField { min_slack, samples }
}

/// Writes the slack field as CSV with header `x1,x2,slack`.
pub fn write_slack_csv<W: std::io::Write>(field: &SlackField, mut w: W) -> std::io::Result<()> {
    writeln!(w, "x1,x2,slack")?;
    for s in &field.samples {
        writeln!(w, "{:.6e},{:.6e},{:.6e}", s.x1, s.x2, s.slack)?;
    }
    Ok(())
}

/// Discrete version of the identity
/// `int |sigma.(p+A) psi|^2 = int |(p+A) psi|^2 + int B <psi, sigma_3 psi>`.
/// Returns (lhs, rhs); the gap shrinks at O(h^2) plus an outer-truncation
/// offset.
pub fn positive_energy_identity(fs: &PlanarFieldSet) -> (f64, f64) {
    let h2 = 2.0 * fs.spacing;
    let w = fs.spacing * fs.spacing;
    let mut lhs = 0.0;
    let mut kinetic = 0.0;
    let mut zeeman = 0.0;
    for i in 1..fs.resolution - 1 {
        for j in 1..fs.resolution - 1 {
            if !fs.included(i, j) {
                continue;
            }
            let [d1, d2] = dirac_at(fs, i, j);
            lhs += d1.norm_sqr() + d2.norm_sqr();
            let [a1, a2] = fs.pot[fs.idx(i, j)];
            for c in 0..2 {
                let dx = (fs.psi[fs.idx(i + 1, j)][c] - fs.psi[fs.idx(i - 1, j)][c]) / h2;
                let dy = (fs.psi[fs.idx(i, j + 1)][c] - fs.psi[fs.idx(i, j - 1)][c]) / h2;
                let p = fs.psi[fs.idx(i, j)][c];
                let t1 = -Complex64::new(0.0, 1.0) * dx + a1 * p;
                let t2 = -Complex64::new(0.0, 1.0) * dy + a2 * p;
                kinetic += t1.norm_sqr() + t2.norm_sqr();
            }
            let [p1, p2] = fs.psi[fs.idx(i, j)];
            zeeman += fs.field[fs.idx(i, j)] * (p1.norm_sqr() - p2.norm_sqr());
        }
    }
    (lhs * w, (kinetic + zeeman) * w)
}

// ---------------------------------------------------------------------------
// Projector identities
// ---------------------------------------------------------------------------

/// The fixed 4x4 projector on R^2 (x) C^2 in the basis
/// (e1 (x) E1, e1 (x) E2, e2 (x) E1, e2 (x) E2).
pub struct ProjectorMatrix;

impl ProjectorMatrix {
    pub fn matrix() -> [[Complex64; 4]; 4] {
        let o = Complex64::new(0.0, 0.0);
        let h = Complex64::new(0.5, 0.0);
        let mi = Complex64::new(0.0, -0.5);
        let pi = Complex64::new(0.0, 0.5);
        [
            [h, o, mi, o],
            [o, h, o, pi],
            [pi, o, h, o],
            [o, mi, o, h],
        ]
    }

    pub fn apply(v: [Complex64; 4]) -> [Complex64; 4] {
        let m = Self::matrix();
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (i, row) in m.iter().enumerate() {
            for (j, mij) in row.iter().enumerate() {
                out[i] += mij * v[j];
            }
        }
        out
    }

    /// u (x) xi for real u in R^2 and complex xi in C^2.
    pub fn tensor(u: [f64; 2], xi: [Complex64; 2]) -> [Complex64; 4] {
        [u[0] * xi[0], u[0] * xi[1], u[1] * xi[0], u[1] * xi[1]]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectorReport {
    /// max |(P^2 - P)_{ij}|
    pub idempotency: f64,
    /// max |(P - P^dagger)_{ij}|
    pub hermiticity: f64,
    /// max | |P(u (x) xi)|^2 - 1/2 | over deterministic and seeded random
    /// unit pairs
    pub norm_deviation: f64,
    pub cases: usize,
    pub seed: u64,
}

impl ProjectorReport {
    pub fn passed(&self) -> bool {
        self.idempotency <= 1e-14 && self.hermiticity <= 1e-14 && self.norm_deviation <= 1e-12
    }
}

pub const PROJECTOR_SEED: u64 = 0x5eed_2d2d;

/// Verifies P^2 = P, P = P^dagger and |P(u (x) xi)|^2 = |u|^2 |xi|^2 / 2 on
/// deterministic basis pairs plus `cases` seeded pseudo-random unit pairs.
pub fn projector_checks(cases: usize, seed: u64) -> ProjectorReport {
    let m = ProjectorMatrix::matrix();
    let mut idem = 0.0f64;
    let mut herm = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..4 {
                acc += m[i][k] * m[k][j];
            }
            idem = idem.max((acc - m[i][j]).norm());
            herm = herm.max((m[i][j] - m[j][i].conj()).norm());
        }
    }

    let mut dev = 0.0f64;
    let mut check = |u: [f64; 2], xi: [Complex64; 2]| {
        let v = ProjectorMatrix::apply(ProjectorMatrix::tensor(u, xi));
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let target = 0.5 * (u[0] * u[0] + u[1] * u[1]) * (xi[0].norm_sqr() + xi[1].norm_sqr());
        dev = dev.max((norm_sq - target).abs());
    };
    // deterministic basis pairs
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for u in [[1.0, 0.0], [0.0, 1.0], [std::f64::consts::FRAC_1_SQRT_2; 2]] {
        for xi in [[one, zero], [zero, one]] {
            check(u, xi);
        }
    }
    // seeded random unit pairs
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mix: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let ph1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let ph2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let u = [theta.cos(), theta.sin()];
        let xi = [
            Complex64::from_polar(mix.cos(), ph1),
            Complex64::from_polar(mix.sin(), ph2),
        ];
        check(u, xi);
    }
    ProjectorReport {
        idempotency: idem,
        hermiticity: herm,
        norm_deviation: dev,
        cases,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes;

    #[test]
    fn sample_rejects_bad_grids() {
        let m = modes::family_historical();
        assert!(sample(&m, 0.0, 129).is_err());
        assert!(sample(&m, 8.0, 64).is_err());
        assert!(sample(&m, 8.0, 128).is_err());
    }

    #[test]
    fn sample_values_at_special_nodes() {
        let m = modes::family_historical();
        let fs = sample(&m, 8.0, 129).unwrap();
        let c = 64; // origin index
        let at_origin = fs.spinor(c, c);
        assert!((at_origin[1].re - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-10);
        assert_eq!(at_origin[0], Complex64::new(0.0, 0.0));
        assert_eq!(fs.potential(c, c), [0.0, 0.0]);
        // node (1, 0) sits at i = c + 8 for h = 0.125
        let i = c + 8;
        let a = fs.potential(i, c);
        assert!((a[0] - 0.0).abs() < 1e-12 && (a[1] - 1.0).abs() < 1e-12, "{a:?}");
    }

    #[test]
    fn projector_identities_hold() {
        let rep = projector_checks(100, PROJECTOR_SEED);
        assert!(rep.idempotency <= 1e-15, "{}", rep.idempotency);
        assert!(rep.hermiticity == 0.0, "{}", rep.hermiticity);
        assert!(rep.norm_deviation <= 1e-15, "{}", rep.norm_deviation);
        assert!(rep.passed());
    }

    #[test]
    fn projector_on_basis_pair() {
        let v = ProjectorMatrix::apply(ProjectorMatrix::tensor(
            [1.0, 0.0],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ));
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 0.5).abs() < 1e-15);
    }

    #[test]
    fn negated_potential_breaks_the_mode() {
        let m = modes::family_historical();
        let fs = sample(&m, 8.0, 65).unwrap();
        let res = pauli_residual(&fs);
        let res_neg = pauli_residual(&fs.negated_potential());
        assert!(res < 0.1, "{res}");
        assert!(res_neg > 1.0, "{res_neg}");
    }
}
