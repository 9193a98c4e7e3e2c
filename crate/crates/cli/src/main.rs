//! Command-line laboratory for two-dimensional zero modes: coupling-ratio
//! evaluation, closed-form bounds, the step-family scan, derivative-free
//! optimization, verification batteries and the Euler-Lagrange residual.
//!
//! Exit codes: 0 on success (and all checks passing), 1 on usage or
//! parameter errors (and failed verification), 2 when a requested integral
//! is divergence-suspected and only partial data is reported.

mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use zeromodes::error::Error;
use zeromodes::functionals;
use zeromodes::modes::{self, ZeroMode};
use zeromodes::optimize;

#[derive(Parser, Debug)]
#[command(name = "zeromodes", version, about = "Zero modes of the planar Dirac-Weyl operator: coupling ratios, bounds, and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Nuclear charge; every physical output scales linearly with it.
    #[arg(long, global = true, default_value_t = 1.0)]
    z: f64,

    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Half-width of the Cartesian verification grid.
    #[arg(long = "grid-L", global = true, default_value_t = 8.0)]
    grid_l: f64,

    /// Odd node count per axis of the Cartesian verification grid.
    #[arg(long = "grid-M", global = true, default_value_t = 257)]
    grid_m: usize,

    /// Output file (CSV for scan and residual profiles, copy of the JSON
    /// report otherwise).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format for flat reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Family {
    Historical,
    Power,
    Step,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Target {
    /// Golden-section maximum of the closed paper-form K(b).
    StepPaper,
    /// Golden-section maximum of the direct-quadrature K(b).
    StepQuadrature,
    /// Nelder-Mead over the power family with an inner cutoff.
    Power,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coupling ratio of one zero-mode family.
    Kl {
        #[arg(long, value_enum)]
        family: Family,
        /// Power-family exponent alpha.
        #[arg(long)]
        alpha: Option<f64>,
        /// Power-family exponent beta.
        #[arg(long)]
        beta: Option<f64>,
        /// Step-field strength.
        #[arg(long)]
        b: Option<f64>,
        /// Inner cutoff for the magnetic-energy integral.
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Closed-form bound constants (Sobolev, upper/coercive couplings, 3D
    /// critical charge).
    Bounds {
        #[arg(long = "L2", default_value_t = zeromodes::bounds::DEFAULT_L2)]
        l2: f64,
        #[arg(long = "L3", default_value_t = zeromodes::bounds::DEFAULT_L3)]
        l3: f64,
        /// Fine-structure constant.
        #[arg(long, default_value_t = zeromodes::bounds::DEFAULT_FINE_STRUCTURE)]
        alpha: f64,
    },
    /// Scan the step family over a range of field strengths; writes the
    /// table as CSV and prints both argmax entries.
    Scan {
        #[arg(long, default_value_t = 2.05)]
        lo: f64,
        #[arg(long, default_value_t = 6.0)]
        hi: f64,
        #[arg(long, default_value_t = 400)]
        steps: usize,
    },
    /// Derivative-free maximization of the coupling ratio.
    Optimize {
        #[arg(long, value_enum, default_value_t = Target::StepPaper)]
        target: Target,
        #[arg(long, default_value_t = 2.05)]
        lo: f64,
        #[arg(long, default_value_t = 6.0)]
        hi: f64,
        #[arg(long = "init-alpha", default_value_t = 2.0)]
        init_alpha: f64,
        #[arg(long = "init-beta", default_value_t = 1.0)]
        init_beta: f64,
        #[arg(long = "max-iters", default_value_t = 200)]
        max_iters: usize,
        /// Inner cutoff shielding the power family's divergent edge.
        #[arg(long, default_value_t = 1e-6)]
        cutoff: f64,
        /// Termination tolerance of the optimizer.
        #[arg(long = "opt-tol", default_value_t = 1e-6)]
        opt_tol: f64,
    },
    /// Verification batteries; exit 0 iff every check passes.
    Verify {
        #[arg(long)]
        suite: verify::Suite,
        /// Mode family for the mode-dependent suites.
        #[arg(long, default_value = "historical")]
        family: String,
        /// Step-field strength for `--family step`.
        #[arg(long)]
        b: Option<f64>,
    },
    /// Euler-Lagrange residual of a family mode.
    ElResidual {
        #[arg(long, value_enum, default_value_t = Family::Historical)]
        family: Family,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
    },
}

/// Fully resolved configuration echoed in every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub z: f64,
    pub tol: f64,
    pub grid_l: f64,
    pub grid_m: usize,
    pub out: Option<String>,
    pub format: String,
}

fn build_mode(
    family: Family,
    alpha: Option<f64>,
    beta: Option<f64>,
    b: Option<f64>,
) -> Result<ZeroMode, Error> {
    match family {
        Family::Historical => Ok(modes::family_historical()),
        Family::Power => {
            let alpha = alpha.ok_or_else(|| {
                Error::InvalidParameter("power family needs --alpha".into())
            })?;
            let beta = beta
                .ok_or_else(|| Error::InvalidParameter("power family needs --beta".into()))?;
            modes::family_power(alpha, beta)
        }
        Family::Step => {
            let b = b.ok_or_else(|| Error::InvalidParameter("step family needs --b".into()))?;
            modes::family_step(b)
        }
    }
}

fn family_label(family: Family) -> &'static str {
    match family {
        Family::Historical => "historical",
        Family::Power => "power",
        Family::Step => "step",
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; usage errors are exit 1 here
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let config = RunConfig {
        subcommand: match &cli.command {
            Command::Kl { .. } => "kl",
            Command::Bounds { .. } => "bounds",
            Command::Scan { .. } => "scan",
            Command::Optimize { .. } => "optimize",
            Command::Verify { .. } => "verify",
            Command::ElResidual { .. } => "el-residual",
        }
        .to_string(),
        z: cli.z,
        tol: cli.tol,
        grid_l: cli.grid_l,
        grid_m: cli.grid_m,
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        format: match cli.format {
            Format::Json => "json",
            Format::Csv => "csv",
        }
        .to_string(),
    };

    let common = cli_common(&cli);
    match cli.command {
        Command::Kl {
            family,
            alpha,
            beta,
            b,
            cutoff,
        } => cmd_kl(&common, config, family, alpha, beta, b, cutoff),
        Command::Bounds { l2, l3, alpha } => cmd_bounds(&common, config, l2, l3, alpha),
        Command::Scan { lo, hi, steps } => cmd_scan(&common, config, lo, hi, steps),
        Command::Optimize {
            target,
            lo,
            hi,
            init_alpha,
            init_beta,
            max_iters,
            cutoff,
            opt_tol,
        } => cmd_optimize(
            &common,
            config,
            target,
            (lo, hi),
            (init_alpha, init_beta),
            max_iters,
            cutoff,
            opt_tol,
        ),
        Command::Verify { suite, family, b } => {
            let checks = verify::run_suite(&common, suite, &family, b).map_err(|e| e.to_string())?;
            let passed = checks.iter().all(|c| c.passed);
            let doc = json!({
                "config": config,
                "suite": suite.label(),
                "passed": passed,
                "checks": checks,
            });
            emit(&serde_json::to_string_pretty(&doc).unwrap(), &common.out)?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::ElResidual {
            family,
            alpha,
            beta,
            b,
        } => cmd_el_residual(&common, config, family, alpha, beta, b),
    }
}

/// Options shared by every subcommand.
pub struct Common {
    pub z: f64,
    pub tol: f64,
    pub grid_l: f64,
    pub grid_m: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn cli_common(cli: &Cli) -> Common {
    Common {
        z: cli.z,
        tol: cli.tol,
        grid_l: cli.grid_l,
        grid_m: cli.grid_m,
        out: cli.out.clone(),
        format: cli.format,
    }
}

const SENSITIVITY_CUTOFFS: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8];

#[allow(clippy::too_many_arguments)]
fn cmd_kl(
    common: &Common,
    config: RunConfig,
    family: Family,
    alpha: Option<f64>,
    beta: Option<f64>,
    b: Option<f64>,
    cutoff: Option<f64>,
) -> Result<u8, String> {
    let mode = build_mode(family, alpha, beta, b).map_err(|e| e.to_string())?;
    let result = functionals::report_with_cutoff(&mode, cutoff, common.tol);
    match result {
        Ok(mut report) => {
            if family == Family::Step {
                report.kl_paper_form_over_z = Some(functionals::kl_step_paper_form(
                    b.expect("step family has b"),
                    1.0,
                ));
            }
            let doc = json!({
                "config": config,
                "family": family_label(family),
                "report": report,
            });
            emit(&render_flat(&doc, common.format), &common.out)?;
            Ok(0)
        }
        Err(Error::DivergenceSuspected { partial, last_ratio }) => {
            // partial result: the convergent pieces plus a cutoff-sensitivity
            // table for the divergent magnetic energy
            let coulomb = functionals::coulomb(&mode, common.tol).map_err(|e| e.to_string())?;
            let l2 = functionals::l2_norm_sq(&mode, common.tol).map_err(|e| e.to_string())?;
            let mut table = Vec::new();
            for cut in SENSITIVITY_CUTOFFS {
                if let (Ok(mag), Ok(klv)) = (
                    functionals::magnetic_energy_cutoff(&mode, 1.5, Some(cut), common.tol),
                    functionals::kl_cutoff(&mode, common.z, Some(cut), common.tol),
                ) {
                    table.push(json!({
                        "cutoff": cut,
                        "magnetic": mag,
                        "kl_over_z": klv / common.z,
                    }));
                }
            }
            let doc = json!({
                "config": config,
                "family": family_label(family),
                "coulomb": coulomb,
                "l2": l2,
                "magnetic": serde_json::Value::Null,
                "divergence": {
                    "partial": partial,
                    "last_increment_ratio": last_ratio,
                    "message": "magnetic energy integral is divergence-suspected; kl tends to zero with the cutoff",
                },
                "cutoff_sensitivity": table,
            });
            emit(&serde_json::to_string_pretty(&doc).unwrap(), &common.out)?;
            Ok(2)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn render_flat(doc: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).unwrap(),
        Format::Csv => {
            // one header row and one value row from the flattened report
            let mut keys = Vec::new();
            let mut vals = Vec::new();
            flatten_into("", doc, &mut keys, &mut vals);
            format!("{}\n{}", keys.join(","), vals.join(","))
        }
    }
}

fn flatten_into(prefix: &str, v: &serde_json::Value, keys: &mut Vec<String>, vals: &mut Vec<String>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(&key, inner, keys, vals);
            }
        }
        serde_json::Value::Array(_) => {}
        other => {
            keys.push(prefix.to_string());
            vals.push(match other {
                serde_json::Value::String(s) => s.clone(),
                v => v.to_string(),
            });
        }
    }
}

fn cmd_bounds(
    common: &Common,
    config: RunConfig,
    l2: f64,
    l3: f64,
    alpha: f64,
) -> Result<u8, String> {
    let report = zeromodes::bounds::bound_report(common.z, l2, l3, alpha)
        .map_err(|e| e.to_string())?;
    let doc = json!({
        "config": config,
        "report": report,
        "kc_upper": report.kc_upper_over_z * common.z,
        "ku": report.ku_over_z * common.z,
    });
    emit(&render_flat(&doc, common.format), &common.out)?;
    Ok(0)
}

fn cmd_scan(
    common: &Common,
    config: RunConfig,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<u8, String> {
    let table =
        optimize::scan_step_family(lo, hi, steps, common.z, common.tol).map_err(|e| e.to_string())?;
    let path = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("scan.csv"));
    let file = std::fs::File::create(&path)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    let mut buf = std::io::BufWriter::new(file);
    table.write_csv(&mut buf).map_err(|e| e.to_string())?;
    buf.flush().map_err(|e| e.to_string())?;
    let summary = table.summary();
    let doc = json!({
        "config": config,
        "rows": table.rows.len(),
        "csv": path.display().to_string(),
        "summary": summary,
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_optimize(
    common: &Common,
    config: RunConfig,
    target: Target,
    bracket: (f64, f64),
    init: (f64, f64),
    max_iters: usize,
    cutoff: f64,
    opt_tol: f64,
) -> Result<u8, String> {
    let doc = match target {
        Target::StepPaper | Target::StepQuadrature => {
            let z = common.z;
            let objective: Box<dyn Fn(f64) -> f64> = match target {
                Target::StepPaper => Box::new(move |b| functionals::kl_step_paper_form(b, z)),
                _ => Box::new(move |b| functionals::kl_step_closed(b, z)),
            };
            let (x, v) = optimize::golden_max(|b| objective(b), bracket.0, bracket.1, opt_tol)
                .map_err(|e| e.to_string())?;
            json!({
                "config": config,
                "target": match target { Target::StepPaper => "step-paper", _ => "step-quadrature" },
                "bracket": [bracket.0, bracket.1],
                "argmax_b": x,
                "value": v,
            })
        }
        Target::Power => {
            let z = common.z;
            let tol = common.tol;
            let objective = move |alpha: f64, beta: f64| -> f64 {
                match modes::family_power_tol(alpha, beta, tol) {
                    Ok(mode) => functionals::kl_cutoff(&mode, z, Some(cutoff), tol)
                        .unwrap_or(f64::NEG_INFINITY),
                    Err(_) => f64::NEG_INFINITY,
                }
            };
            let res = optimize::nelder_mead_max(objective, init, opt_tol, max_iters)
                .map_err(|e| e.to_string())?;
            json!({
                "config": config,
                "target": "power",
                "init": [init.0, init.1],
                "cutoff": cutoff,
                "alpha": res.params.0,
                "beta": res.params.1,
                "value": res.value,
                "iterations": res.iterations,
                "converged": res.converged,
            })
        }
    };
    emit(&serde_json::to_string_pretty(&doc).unwrap(), &common.out)?;
    Ok(0)
}

fn cmd_el_residual(
    common: &Common,
    config: RunConfig,
    family: Family,
    alpha: Option<f64>,
    beta: Option<f64>,
    b: Option<f64>,
) -> Result<u8, String> {
    let mode = build_mode(family, alpha, beta, b).map_err(|e| e.to_string())?;
    match functionals::el_residual(&mode, common.tol) {
        Ok(res) => {
            if let Some(path) = &common.out {
                // residual profile as CSV for plotting
                let mut text = String::from("r,residual\n");
                if let zeromodes::RadialProfile::Sampled { grid, values } = &res.profile {
                    for (r, v) in grid.nodes().iter().zip(values) {
                        text.push_str(&format!("{r:.9e},{v:.9e}\n"));
                    }
                }
                std::fs::write(path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let doc = json!({
                "config": config,
                "family": family_label(family),
                "coefficients": res.coefficients,
                "weighted_norm": res.weighted_norm,
                "excluded_window": res.excluded,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(0)
        }
        Err(Error::DivergenceSuspected { partial, last_ratio }) => {
            let doc = json!({
                "config": config,
                "family": family_label(family),
                "divergence": { "partial": partial, "last_increment_ratio": last_ratio },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(2)
        }
        Err(e) => Err(e.to_string()),
    }
}
