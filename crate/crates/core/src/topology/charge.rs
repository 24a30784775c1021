//! Winding numbers on planar contours and the degree of the far-field map
//! S² → S² (monopole charge).

use crate::field::project_sample;
use crate::solutions::{HedgehogSpec, SolutionSpec};
use crate::{Error, Point3, Real, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Integer topological index together with the raw accumulated quantity it
/// was rounded from.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChargeReport {
    pub index: i64,
    /// Accumulated phase / 4π-solid-angle before rounding.
    pub raw: Real,
    /// |raw − index|; below 0.05 for an accepted report.
    pub defect: Real,
}

impl ChargeReport {
    fn from_raw(raw: Real) -> Self {
        let index = raw.round() as i64;
        ChargeReport { index, raw, defect: (raw - index as Real).abs() }
    }
}

/// Winding of arg(u) around the axis-centered circle ρ = `radius` at height
/// `z`. For a valid multi-string spec with contour radius beyond every string
/// this equals max{n_j}.
pub fn winding_number(
    spec: &SolutionSpec,
    z: Real,
    radius: Real,
    samples: usize,
) -> Result<ChargeReport> {
    winding_number_about(spec, (0.0, 0.0), z, radius, samples)
}

/// Winding of arg(u) around a circle of radius `radius` centered at `center`
/// in the z = `z` plane; small contours around a single string isolate that
/// string's unit charge.
pub fn winding_number_about(
    spec: &SolutionSpec,
    center: (Real, Real),
    z: Real,
    radius: Real,
    samples: usize,
) -> Result<ChargeReport> {
    if samples < 8 {
        return Err(Error::InvalidParameter("winding contour needs at least 8 samples".into()));
    }
    let mut values = Vec::with_capacity(samples + 1);
    for i in 0..=samples {
        let t = TAU * i as Real / samples as Real;
        let p = Point3::cartesian(center.0 + radius * t.cos(), center.1 + radius * t.sin(), z);
        let s = spec.evaluate(&p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole on contour at sample {i}")));
        }
        values.push(s.value);
    }
    let scale = values.iter().map(|v| v.norm()).fold(0.0, Real::max);
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| v.norm() < 1e-12 * (1.0 + scale))
    {
        return Err(Error::ZeroOnContour { index: i, magnitude: v.norm() });
    }
    // nearest-branch phase unwrapping; a jump above π/2 flags undersampling
    let mut total = 0.0;
    for i in 0..samples {
        let mut d = (values[i + 1].arg() - values[i].arg()) % TAU;
        if d > PI {
            d -= TAU;
        } else if d < -PI {
            d += TAU;
        }
        if d.abs() > FRAC_PI_2 {
            return Err(Error::PhaseJump { index: i, jump: d });
        }
        total += d;
    }
    Ok(ChargeReport::from_raw(total / TAU))
}

/// Signed solid angle of the spherical triangle (a, b, c) (Van Oosterom &
/// Strackee).
fn triangle_solid_angle(a: &crate::UnitVector3, b: &crate::UnitVector3, c: &crate::UnitVector3) -> Real {
    let triple = a.dot(&b.cross(c));
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * triple.atan2(denom)
}

/// Degree of the map (θ, φ) ↦ n⃗(θ, φ) at radius `r`, by summing the signed
/// solid angles of the image cells of a (θ_steps × φ_steps) grid.
///
/// Orientation is fixed so the positive-branch hedgehog with max winding n
/// reports +n.
pub fn monopole_degree(
    spec: &HedgehogSpec,
    r: Real,
    grid: (usize, usize),
) -> Result<ChargeReport> {
    let (t_steps, p_steps) = grid;
    if t_steps < 64 || p_steps < 64 {
        return Err(Error::InvalidParameter(format!(
            "degree grid must be at least 64x64, got {t_steps}x{p_steps}"
        )));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidParameter("degree evaluation radius must be positive".into()));
    }
    // n-vectors at the grid corners; the pole flag projects to the north pole
    let mut vectors = Vec::with_capacity((t_steps + 1) * (p_steps + 1));
    for i in 0..=t_steps {
        let theta = PI * i as Real / t_steps as Real;
        for j in 0..=p_steps {
            let phi = TAU * j as Real / p_steps as Real;
            let sample = spec.evaluate(&Point3::Spherical { r, theta, phi })?;
            vectors.push(project_sample(&sample));
        }
    }
    let at = |i: usize, j: usize| &vectors[i * (p_steps + 1) + j];
    let mut omega = 0.0;
    for i in 0..t_steps {
        for j in 0..p_steps {
            let a = at(i, j);
            let b = at(i + 1, j);
            let c = at(i + 1, j + 1);
            let d = at(i, j + 1);
            omega += triangle_solid_angle(a, b, c) + triangle_solid_angle(a, c, d);
        }
    }
    // (φ, θ) orientation: the +1 hedgehog image sweeps the target sphere once
    // with negative (θ, φ)-orientation
    let report = ChargeReport::from_raw(-omega / (4.0 * PI));
    if report.defect >= 0.05 {
        return Err(Error::GridTooCoarse { defect: report.defect });
    }
    Ok(report)
}
