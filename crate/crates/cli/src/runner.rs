//! Task execution: run each configured task against the spec, write one
//! report per task, and fold the per-task pass flags into an exit status.

use crate::config::{GridSpec, JobConfig, TaskConfig};
use eikonal_core::field::project_sample;
use eikonal_core::residuals::{
    effective_mass_residual, eikonal_residual, gradient_check, laplace_residual, massive_residual,
    o3_eom_residual, Identity, ResidualReport,
};
use eikonal_core::sampling::{default_region, sample_points};
use eikonal_core::solutions::SolutionSpec;
use eikonal_core::topology::{
    braid_closure, locate_strings, monopole_degree, trace_string_curves, winding_number,
    SearchBox, StringCurve, TraceOptions,
};
use eikonal_core::{Point3, Real};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

/// Identities certified by default for each family.
pub fn default_identities(spec: &SolutionSpec) -> Vec<Identity> {
    match spec {
        SolutionSpec::CylString(_) | SolutionSpec::EllipticString(_) | SolutionSpec::Composite(_) => {
            vec![Identity::Eikonal, Identity::GradientCheck]
        }
        SolutionSpec::MassiveCyl(s) if s.dim == 2 => {
            vec![Identity::Massive, Identity::EffectiveMass, Identity::GradientCheck]
        }
        SolutionSpec::MassiveCyl(_) => vec![Identity::Massive, Identity::GradientCheck],
        SolutionSpec::Hedgehog(s) if s.m_pow.is_none() => vec![
            Identity::Eikonal,
            Identity::Laplace,
            Identity::O3Eom,
            Identity::GradientCheck,
        ],
        SolutionSpec::Hedgehog(_) => vec![Identity::Eikonal, Identity::GradientCheck],
    }
}

/// Config-level applicability of a requested identity to the spec family.
pub fn check_identity_applicable(spec: &SolutionSpec, identity: Identity) -> Result<(), String> {
    match identity {
        Identity::Massive => match spec {
            SolutionSpec::MassiveCyl(_) => Ok(()),
            _ => Err("identity massive applies only to the massive_cyl family".into()),
        },
        Identity::EffectiveMass => match spec {
            SolutionSpec::MassiveCyl(s) if s.dim == 2 => Ok(()),
            _ => Err("identity effective_mass applies only to massive_cyl with dim = 2".into()),
        },
        _ => Ok(()),
    }
}

fn max_winding(spec: &SolutionSpec) -> u32 {
    match spec {
        SolutionSpec::CylString(s) => s.max_winding(),
        SolutionSpec::MassiveCyl(s) => s.winding,
        SolutionSpec::EllipticString(s) => s.winding,
        SolutionSpec::Hedgehog(s) => s.max_winding(),
        SolutionSpec::Composite(c) => max_winding(&c.base),
    }
}

fn residual_value(report: &ResidualReport) -> Value {
    serde_json::to_value(report).expect("residual report serializes")
}

struct TaskResult {
    pass: bool,
    body: Value,
}

fn run_verify(
    config: &JobConfig,
    identities: &[Identity],
    points: usize,
) -> Result<TaskResult, String> {
    let spec = &config.spec;
    let identities: Vec<Identity> =
        if identities.is_empty() { default_identities(spec) } else { identities.to_vec() };
    let sample = sample_points(&default_region(spec), points, config.seed);
    let mut reports = Vec::new();
    let mut pass = true;
    for &identity in &identities {
        let report = match identity {
            Identity::Eikonal => eikonal_residual(spec, &sample),
            Identity::Laplace => laplace_residual(spec, &sample),
            Identity::O3Eom => o3_eom_residual(spec, &sample),
            Identity::GradientCheck => gradient_check(spec, &sample),
            Identity::Massive | Identity::EffectiveMass => {
                let SolutionSpec::MassiveCyl(ms) = spec else {
                    return Err(format!("identity {identity} needs a massive_cyl spec"));
                };
                if identity == Identity::Massive {
                    massive_residual(ms, &sample)
                } else {
                    effective_mass_residual(ms, &sample)
                }
            }
        }
        .map_err(|e| format!("identity {identity}: {e}"))?;
        let threshold = config.tolerances.for_identity(identity);
        let ok = report.max_rel < threshold;
        pass &= ok;
        reports.push(json!({
            "report": residual_value(&report),
            "threshold": threshold,
            "pass": ok,
        }));
    }
    Ok(TaskResult { pass, body: json!({ "points": points, "identities": reports }) })
}

fn run_charge(
    config: &JobConfig,
    z: Real,
    radius: Option<Real>,
    samples: Option<usize>,
) -> Result<TaskResult, String> {
    let spec = &config.spec;
    let report = match spec {
        SolutionSpec::Hedgehog(h) => {
            let steps = samples.unwrap_or(128).max(64);
            monopole_degree(h, radius.unwrap_or(1.0), (steps, steps))
        }
        _ => {
            let n = max_winding(spec).max(1) as usize;
            winding_number(spec, z, radius.unwrap_or(6.0), samples.unwrap_or(1024 * n))
        }
    }
    .map_err(|e| e.to_string())?;
    let pass = report.defect < 0.05;
    Ok(TaskResult {
        pass,
        body: json!({
            "kind": if matches!(spec, SolutionSpec::Hedgehog(_)) { "degree" } else { "winding" },
            "report": serde_json::to_value(&report).expect("charge report serializes"),
            "pass": pass,
        }),
    })
}

fn run_locate(
    config: &JobConfig,
    z: Real,
    rho_max: Real,
    grid: (usize, usize),
) -> Result<TaskResult, String> {
    let zeros = locate_strings(&config.spec, z, &SearchBox { rho_max, grid })
        .map_err(|e| e.to_string())?;
    Ok(TaskResult {
        pass: true,
        body: json!({ "z": z, "count": zeros.len(), "zeros": zeros }),
    })
}

fn curve_summary(curve: &StringCurve) -> Value {
    let radii: Vec<Real> = curve.radii().collect();
    let r_min = radii.iter().cloned().fold(Real::INFINITY, Real::min);
    let r_max = radii.iter().cloned().fold(Real::NEG_INFINITY, Real::max);
    json!({
        "branch": curve.branch_index,
        "points": curve.points.len(),
        "radius_min": r_min,
        "radius_max": r_max,
        "radius_spread": r_max - r_min,
        "phi_advance": curve.total_phi_advance(),
    })
}

fn write_curves_csv(out_dir: &Path, curves: &[StringCurve]) -> Result<(), String> {
    let path = out_dir.join("curves.csv");
    let mut text = String::from("x,y,z,branch\n");
    for curve in curves {
        for p in &curve.points {
            let (x, y, z) = p.to_cartesian();
            text.push_str(&format!("{x},{y},{z},{}\n", curve.branch_index));
        }
    }
    std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_trace(
    config: &JobConfig,
    out_dir: &Path,
    z_min: Real,
    z_max: Real,
    step: Real,
    rho_max: Real,
    grid: (usize, usize),
) -> Result<TaskResult, String> {
    let options =
        TraceOptions { search: SearchBox { rho_max, grid }, ..TraceOptions::default() };
    let curves = trace_string_curves(&config.spec, z_min, z_max, step, &options)
        .map_err(|e| e.to_string())?;
    write_curves_csv(out_dir, &curves)?;
    Ok(TaskResult {
        pass: true,
        body: json!({
            "z_min": z_min,
            "z_max": z_max,
            "step": step,
            "curves": curves.iter().map(curve_summary).collect::<Vec<_>>(),
        }),
    })
}

fn run_closure(
    config: &JobConfig,
    out_dir: &Path,
    period: Real,
    z_min: Real,
    step: Option<Real>,
    rho_max: Real,
    grid: (usize, usize),
) -> Result<TaskResult, String> {
    let step = step.unwrap_or(period / 96.0);
    let options =
        TraceOptions { search: SearchBox { rho_max, grid }, ..TraceOptions::default() };
    let curves = trace_string_curves(&config.spec, z_min, z_min + period, step, &options)
        .map_err(|e| e.to_string())?;
    write_curves_csv(out_dir, &curves)?;
    let closure = braid_closure(&curves, period).map_err(|e| e.to_string())?;
    Ok(TaskResult {
        pass: true,
        body: json!({
            "curves": curves.iter().map(curve_summary).collect::<Vec<_>>(),
            "closure": serde_json::to_value(&closure).expect("closure serializes"),
        }),
    })
}

fn linspace(lo: Real, hi: Real, n: usize) -> Vec<Real> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as Real / (n - 1) as Real).collect()
}

fn run_sample_grid(
    config: &JobConfig,
    out_dir: &Path,
    grid: &GridSpec,
) -> Result<TaskResult, String> {
    let xs = linspace(grid.x.0, grid.x.1, grid.shape.0);
    let ys = linspace(grid.y.0, grid.y.1, grid.shape.1);
    let zs = linspace(grid.z.0, grid.z.1, grid.shape.2);
    let mut text = String::from("x,y,z,re_u,im_u,n1,n2,n3\n");
    let mut rows = 0usize;
    for &z in &zs {
        for &y in &ys {
            for &x in &xs {
                let sample = config
                    .spec
                    .evaluate(&Point3::cartesian(x, y, z))
                    .map_err(|e| format!("grid node ({x}, {y}, {z}): {e}"))?;
                let n = project_sample(&sample);
                let (re, im) = if sample.pole {
                    (Real::INFINITY, Real::INFINITY)
                } else {
                    (sample.value.re, sample.value.im)
                };
                text.push_str(&format!("{x},{y},{z},{re},{im},{},{},{}\n", n.n1, n.n2, n.n3));
                rows += 1;
            }
        }
    }
    let path = out_dir.join("grid.csv");
    std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(TaskResult { pass: true, body: json!({ "rows": rows, "file": "grid.csv" }) })
}

fn write_report(
    out_dir: &Path,
    config: &JobConfig,
    task: &TaskConfig,
    result: &TaskResult,
    seconds: f64,
) -> Result<(), String> {
    let body = json!({
        "task": task.name(),
        "config": serde_json::to_value(task).expect("task config serializes"),
        "spec": serde_json::to_value(&config.spec).expect("spec serializes"),
        "seed": config.seed,
        "tolerances": serde_json::to_value(config.tolerances).expect("tolerances serialize"),
        "pass": result.pass,
        "result": result.body,
    });
    let body_text = serde_json::to_string(&body).expect("report body serializes");
    let content = format!("{{\"body\":{body_text},\"timing\":{{\"seconds\":{seconds}}}}}\n");
    let path = out_dir.join(format!("{}.report.json", task.name()));
    let mut file =
        std::fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    file.write_all(content.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
}

/// Run the job's tasks (all, or only sample-grid tasks when `sample_only`).
/// Returns the process exit code: 0 if every task passed, 2 if any task
/// failed its threshold or errored at computation time.
pub fn run_job(config: &JobConfig, quiet: bool, sample_only: bool) -> Result<i32, String> {
    std::fs::create_dir_all(&config.output)
        .map_err(|e| format!("{}: cannot create output directory: {e}", config.output.display()))?;
    let tasks: Vec<&TaskConfig> = config
        .tasks
        .iter()
        .filter(|t| !sample_only || matches!(t, TaskConfig::SampleGrid { .. }))
        .collect();
    if tasks.is_empty() {
        return Err("no sample_grid task in config".into());
    }
    let mut all_pass = true;
    for task in tasks {
        let start = Instant::now();
        let outcome = match task {
            TaskConfig::Verify { identities, points } => run_verify(config, identities, *points),
            TaskConfig::Charge { z, radius, samples } => run_charge(config, *z, *radius, *samples),
            TaskConfig::Locate { z, rho_max, grid } => run_locate(config, *z, *rho_max, *grid),
            TaskConfig::Trace { z_min, z_max, step, rho_max, grid } => {
                run_trace(config, &config.output, *z_min, *z_max, *step, *rho_max, *grid)
            }
            TaskConfig::Closure { period, z_min, step, rho_max, grid } => {
                run_closure(config, &config.output, *period, *z_min, *step, *rho_max, *grid)
            }
            TaskConfig::SampleGrid { grid } => run_sample_grid(config, &config.output, grid),
        };
        let seconds = start.elapsed().as_secs_f64();
        let result = match outcome {
            Ok(result) => result,
            Err(e) => TaskResult { pass: false, body: json!({ "error": e }) },
        };
        write_report(&config.output, config, task, &result, seconds)?;
        if !quiet {
            let status = if result.pass { "pass" } else { "FAIL" };
            println!("{:<12} {status}  ({seconds:.3}s)", task.name());
        }
        all_pass &= result.pass;
    }
    Ok(if all_pass { 0 } else { 2 })
}
