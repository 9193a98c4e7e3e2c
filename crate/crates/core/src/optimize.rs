//! Derivative-free maximization and the 1D coupling scan over the
//! step-field family.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals;
use crate::modes;

/// Golden-section maximization of a unimodal function on [lo, hi].
/// NaN objective values abort; -inf is tolerated (never selected unless the
/// whole bracket is infeasible).
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    if f1.is_nan() {
        return Err(Error::NonFiniteObjective(format!("x = {x1}")));
    }
    if f2.is_nan() {
        return Err(Error::NonFiniteObjective(format!("x = {x2}")));
    }
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            if f2.is_nan() {
                return Err(Error::NonFiniteObjective(format!("x = {x2}")));
            }
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            if f1.is_nan() {
                return Err(Error::NonFiniteObjective(format!("x = {x1}")));
            }
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    if fx == f64::NEG_INFINITY && f1 == f64::NEG_INFINITY && f2 == f64::NEG_INFINITY {
        return Err(Error::AllInfeasible);
    }
    Ok((x, fx))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NelderMeadResult {
    pub params: (f64, f64),
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const NM_REFLECTION: f64 = 1.0;
const NM_EXPANSION: f64 = 2.0;
const NM_CONTRACTION: f64 = 0.5;
const NM_SHRINK: f64 = 0.5;
const NM_INITIAL_STEP: f64 = 0.5;

/// Two-dimensional Nelder-Mead maximization with the classic
/// reflection/expansion/contraction/shrink coefficients (1, 2, 0.5, 0.5).
/// Terminates when the simplex diameter drops below `tol` or after
/// `max_iters` iterations. Non-finite objective values are treated as -inf;
/// an entirely infeasible initial simplex is an error.
pub fn nelder_mead_max<F: Fn(f64, f64) -> f64>(
    f: F,
    init: (f64, f64),
    tol: f64,
    max_iters: usize,
) -> Result<NelderMeadResult> {
    let eval = |p: [f64; 2]| -> f64 {
        let v = f(p[0], p[1]);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let mut simplex = [
        [init.0, init.1],
        [init.0 + NM_INITIAL_STEP, init.1],
        [init.0, init.1 + NM_INITIAL_STEP],
    ];
    let mut values = [eval(simplex[0]), eval(simplex[1]), eval(simplex[2])];
    if values.iter().all(|v| *v == f64::NEG_INFINITY) {
        return Err(Error::AllInfeasible);
    }

    let diameter = |s: &[[f64; 2]; 3]| -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            for j in i + 1..3 {
                let dx = s[i][0] - s[j][0];
                let dy = s[i][1] - s[j][1];
                d = d.max((dx * dx + dy * dy).sqrt());
            }
        }
        d
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        // order best -> worst; stable so ties keep the older vertex first
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
        let sorted = [simplex[order[0]], simplex[order[1]], simplex[order[2]]];
        let sorted_vals = [values[order[0]], values[order[1]], values[order[2]]];
        simplex = sorted;
        values = sorted_vals;

        if diameter(&simplex) < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let worst = simplex[2];
        let reflect = [
            centroid[0] + NM_REFLECTION * (centroid[0] - worst[0]),
            centroid[1] + NM_REFLECTION * (centroid[1] - worst[1]),
        ];
        let f_reflect = eval(reflect);

        if f_reflect > values[0] {
            // try expansion
            let expand = [
                centroid[0] + NM_EXPANSION * (reflect[0] - centroid[0]),
                centroid[1] + NM_EXPANSION * (reflect[1] - centroid[1]),
            ];
            let f_expand = eval(expand);
            if f_expand > f_reflect {
                simplex[2] = expand;
                values[2] = f_expand;
            } else {
                simplex[2] = reflect;
                values[2] = f_reflect;
            }
            continue;
        }
        if f_reflect > values[1] {
            simplex[2] = reflect;
            values[2] = f_reflect;
            continue;
        }
        // contraction (outside if the reflected point improved on the worst)
        let (anchor, f_anchor) = if f_reflect > values[2] {
            (reflect, f_reflect)
        } else {
            (worst, values[2])
        };
        let contract = [
            centroid[0] + NM_CONTRACTION * (anchor[0] - centroid[0]),
            centroid[1] + NM_CONTRACTION * (anchor[1] - centroid[1]),
        ];
        let f_contract = eval(contract);
        if f_contract > f_anchor {
            simplex[2] = contract;
            values[2] = f_contract;
            continue;
        }
        // shrink toward the best vertex
        for k in 1..3 {
            simplex[k] = [
                simplex[0][0] + NM_SHRINK * (simplex[k][0] - simplex[0][0]),
                simplex[0][1] + NM_SHRINK * (simplex[k][1] - simplex[0][1]),
            ];
            values[k] = eval(simplex[k]);
        }
    }

    let mut best = 0;
    for k in 1..3 {
        if values[k] > values[best] {
            best = k;
        }
    }
    Ok(NelderMeadResult {
        params: (simplex[best][0], simplex[best][1]),
        value: values[best],
        iterations,
        converged,
    })
}

/// One row of the coupling scan over the step-field strength. The coulomb,
/// l2 and magnetic columns are the quadrature values for the displayed
/// amplitude-one spinor; the two kl columns carry the closed paper-form
/// curve and the direct quadrature ratio.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub b: f64,
    pub coulomb: f64,
    pub l2: f64,
    pub magnetic32: f64,
    pub kl_paper_form: f64,
    pub kl_quadrature: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanExtremum {
    pub b: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub paper_form_argmax: ScanExtremum,
    pub quadrature_argmax: ScanExtremum,
    /// Largest relative gap between the two kl columns over the scan; the
    /// two closed forms genuinely disagree, so this is reported rather than
    /// hidden.
    pub max_relative_gap: f64,
}

impl ScanTable {
    pub fn summary(&self) -> ScanSummary {
        let mut paper = ScanExtremum {
            b: f64::NAN,
            value: f64::NEG_INFINITY,
        };
        let mut quad = ScanExtremum {
            b: f64::NAN,
            value: f64::NEG_INFINITY,
        };
        let mut gap = 0.0f64;
        for row in &self.rows {
            if row.kl_paper_form > paper.value {
                paper = ScanExtremum {
                    b: row.b,
                    value: row.kl_paper_form,
                };
            }
            if row.kl_quadrature > quad.value {
                quad = ScanExtremum {
                    b: row.b,
                    value: row.kl_quadrature,
                };
            }
            gap = gap.max((row.kl_paper_form - row.kl_quadrature).abs() / row.kl_paper_form.abs());
        }
        ScanSummary {
            paper_form_argmax: paper,
            quadrature_argmax: quad,
            max_relative_gap: gap,
        }
    }

    /// CSV with the fixed header `b,coulomb,l2,magnetic32,kl_paper_form,kl_quadrature`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "b,coulomb,l2,magnetic32,kl_paper_form,kl_quadrature")?;
        for r in &self.rows {
            writeln!(
                w,
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                r.b, r.coulomb, r.l2, r.magnetic32, r.kl_paper_form, r.kl_quadrature
            )?;
        }
        Ok(())
    }
}

/// Evaluates the step family on an even grid of field strengths b in
/// [lo, hi] with `steps` rows. Requires 2 < lo < hi and steps >= 10.
pub fn scan_step_family(lo: f64, hi: f64, steps: usize, z: f64, tol: f64) -> Result<ScanTable> {
    if !(lo > 2.0 && lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "scan range must satisfy 2 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    if steps < 10 {
        return Err(Error::InvalidParameter(format!(
            "scan needs at least 10 steps, got {steps}"
        )));
    }
    let mut rows = Vec::with_capacity(steps);
    let dx = (hi - lo) / (steps - 1) as f64;
    for k in 0..steps {
        let b = lo + k as f64 * dx;
        let raw = modes::family_step_raw(b)?;
        let coulomb = functionals::coulomb(&raw, tol)?;
        let l2 = functionals::l2_norm_sq(&raw, tol)?;
        let magnetic32 = functionals::magnetic_energy(&raw, 1.5, tol)?;
        let normalized = modes::family_step(b)?;
        let kl_quadrature = functionals::kl(&normalized, z, tol)?;
        rows.push(ScanRow {
            b,
            coulomb,
            l2,
            magnetic32,
            kl_paper_form: functionals::kl_step_paper_form(b, z),
            kl_quadrature,
        });
    }
    Ok(ScanTable { rows })
}
