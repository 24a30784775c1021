//! JSON job configuration: a solution spec, a task list, and run options.

use eikonal_core::residuals::Identity;
use eikonal_core::solutions::SolutionSpec;
use eikonal_core::Real;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Residual pass thresholds; `analytic` gates identities evaluated from
/// closed-form gradients, `fd` gates finite-difference comparisons.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_analytic")]
    pub analytic: Real,
    #[serde(default = "default_fd")]
    pub fd: Real,
}

fn default_analytic() -> Real {
    1e-6
}

fn default_fd() -> Real {
    1e-4
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { analytic: default_analytic(), fd: default_fd() }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.analytic > 0.0 && self.fd > 0.0) {
            return Err(format!(
                "tolerance overrides must be positive (analytic = {}, fd = {})",
                self.analytic, self.fd
            ));
        }
        Ok(())
    }

    pub fn for_identity(&self, identity: Identity) -> Real {
        match identity {
            Identity::GradientCheck => self.fd,
            _ => self.analytic,
        }
    }
}

/// Axis-aligned Cartesian grid for the sample-grid task.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x: (Real, Real),
    pub y: (Real, Real),
    pub z: (Real, Real),
    pub shape: (usize, usize, usize),
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), String> {
        let (nx, ny, nz) = self.shape;
        if nx == 0 || ny == 0 || nz == 0 {
            return Err("grid shape components must be >= 1".into());
        }
        for (name, (lo, hi)) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(format!("grid bounds for {name} must be finite with lo <= hi"));
            }
        }
        Ok(())
    }
}

/// One pipeline task. The `task` discriminator doubles as the report-file
/// prefix (`<task>.report.json`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskConfig {
    /// Certify PDE identities on a seeded random sample.
    Verify {
        /// Identities to check; empty means the family's defaults.
        #[serde(default)]
        identities: Vec<Identity>,
        #[serde(default = "default_points")]
        points: usize,
    },
    /// Topological charge: phase winding for string families, map degree for
    /// hedgehogs.
    Charge {
        #[serde(default)]
        z: Real,
        /// Contour radius (strings) or evaluation radius (hedgehogs).
        #[serde(default)]
        radius: Option<Real>,
        /// Contour sample count (strings) or (θ, φ) grid (hedgehogs).
        #[serde(default)]
        samples: Option<usize>,
    },
    /// Locate string zeros in one z-slice.
    Locate {
        #[serde(default)]
        z: Real,
        #[serde(default = "default_rho_max")]
        rho_max: Real,
        #[serde(default = "default_grid")]
        grid: (usize, usize),
    },
    /// Trace string curves through a z-range; writes curves.csv.
    Trace {
        z_min: Real,
        z_max: Real,
        step: Real,
        #[serde(default = "default_rho_max")]
        rho_max: Real,
        #[serde(default = "default_grid")]
        grid: (usize, usize),
    },
    /// Trace over one period and classify the braid closure.
    Closure {
        period: Real,
        #[serde(default)]
        z_min: Real,
        #[serde(default)]
        step: Option<Real>,
        #[serde(default = "default_rho_max")]
        rho_max: Real,
        #[serde(default = "default_grid")]
        grid: (usize, usize),
    },
    /// Dump u and n⃗ on a Cartesian grid; writes grid.csv.
    SampleGrid { grid: GridSpec },
}

impl TaskConfig {
    pub fn name(&self) -> &'static str {
        match self {
            TaskConfig::Verify { .. } => "verify",
            TaskConfig::Charge { .. } => "charge",
            TaskConfig::Locate { .. } => "locate",
            TaskConfig::Trace { .. } => "trace",
            TaskConfig::Closure { .. } => "closure",
            TaskConfig::SampleGrid { .. } => "sample_grid",
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            TaskConfig::Verify { points, .. } => {
                if *points == 0 {
                    return Err("verify task needs points >= 1".into());
                }
            }
            TaskConfig::Charge { radius, samples, .. } => {
                if let Some(r) = radius {
                    if !(*r > 0.0) {
                        return Err("charge radius must be positive".into());
                    }
                }
                if let Some(s) = samples {
                    if *s < 8 {
                        return Err("charge sample count must be >= 8".into());
                    }
                }
            }
            TaskConfig::Locate { rho_max, grid, .. } => {
                validate_search(*rho_max, *grid)?;
            }
            TaskConfig::Trace { z_min, z_max, step, rho_max, grid } => {
                validate_search(*rho_max, *grid)?;
                if !(*step > 0.0 && z_max > z_min) {
                    return Err("trace task needs z_max > z_min and step > 0".into());
                }
            }
            TaskConfig::Closure { period, step, rho_max, grid, .. } => {
                validate_search(*rho_max, *grid)?;
                if !(*period > 0.0) {
                    return Err("closure period must be positive".into());
                }
                if let Some(s) = step {
                    if !(*s > 0.0) {
                        return Err("closure step must be positive".into());
                    }
                }
            }
            TaskConfig::SampleGrid { grid } => grid.validate()?,
        }
        Ok(())
    }
}

fn validate_search(rho_max: Real, grid: (usize, usize)) -> Result<(), String> {
    if !(rho_max > 0.0) {
        return Err("search rho_max must be positive".into());
    }
    if grid.0 < 2 || grid.1 < 2 {
        return Err("search grid must be at least 2x2".into());
    }
    Ok(())
}

fn default_points() -> usize {
    1000
}

fn default_rho_max() -> Real {
    5.0
}

fn default_grid() -> (usize, usize) {
    (128, 128)
}

/// Top-level job description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub spec: SolutionSpec,
    pub tasks: Vec<TaskConfig>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_output() -> PathBuf {
    PathBuf::from(".")
}

impl JobConfig {
    /// Parse and validate a config file; errors carry the file path and the
    /// violated field or invariant (spec violations name the broken
    /// equation).
    pub fn load(path: &std::path::Path) -> Result<JobConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("{}: cannot read config: {e}", path.display()))?;
        let config: JobConfig = serde_json::from_str(&text)
            .map_err(|e| format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))?;
        config.validate().map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.spec.validate().map_err(|e| format!("field spec: {e}"))?;
        if self.tasks.is_empty() {
            return Err("field tasks: at least one task is required".into());
        }
        for (i, task) in self.tasks.iter().enumerate() {
            task.validate().map_err(|e| format!("field tasks[{i}]: {e}"))?;
        }
        self.tolerances.validate().map_err(|e| format!("field tolerances: {e}"))?;
        Ok(())
    }
}
