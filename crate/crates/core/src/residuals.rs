//! Numerical certification of the PDE identities the solution families
//! satisfy: the eikonal constraint, its massive variant, the Laplace
//! equation, the static O(3) sigma-model equation of motion, and the
//! effective-mass dynamical equation of the planar massive string.
//!
//! All residuals are relative with a +1 floor in the denominator, so families
//! with exponentially growing radial factors and near-zero fields share one
//! pass criterion.

use crate::field::{default_fd_step, default_fd_step2, fd_gradient, fd_laplacian, pole_checked};
use crate::solutions::{MassiveCylSpec, SolutionSpec};
use crate::{Complex, Error, Point3, Real, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which identity a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Eikonal,
    Massive,
    Laplace,
    O3Eom,
    EffectiveMass,
    GradientCheck,
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Identity::Eikonal => "eikonal",
            Identity::Massive => "massive",
            Identity::Laplace => "laplace",
            Identity::O3Eom => "o3_eom",
            Identity::EffectiveMass => "effective_mass",
            Identity::GradientCheck => "gradient_check",
        };
        f.write_str(name)
    }
}

/// Aggregated per-identity residual statistics over a point sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity: Identity,
    pub points: usize,
    pub max_rel: Real,
    pub mean_rel: Real,
    pub worst_point: Point3,
}

/// Evaluate `per_point` over all points in parallel, then aggregate in input
/// order so max/mean are reproducible bit-for-bit.
fn aggregate<F>(identity: Identity, points: &[Point3], per_point: F) -> Result<ResidualReport>
where
    F: Fn(&Point3) -> Result<Real> + Sync,
{
    if points.is_empty() {
        return Err(Error::InvalidParameter("residual report needs at least one point".into()));
    }
    let residuals: Vec<Result<Real>> = points.par_iter().map(&per_point).collect();
    let mut max_rel = -1.0;
    let mut sum = 0.0;
    let mut worst = points[0];
    for (p, r) in points.iter().zip(residuals) {
        let r = r?;
        sum += r;
        if r > max_rel {
            max_rel = r;
            worst = *p;
        }
    }
    Ok(ResidualReport {
        identity,
        points: points.len(),
        max_rel,
        mean_rel: sum / points.len() as Real,
        worst_point: worst,
    })
}

/// |(∇u)²| / (1 + Σ|∂u|²) with analytic gradients.
pub fn eikonal_residual(spec: &SolutionSpec, points: &[Point3]) -> Result<ResidualReport> {
    aggregate(Identity::Eikonal, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        Ok(s.grad_squared().norm() / (1.0 + s.grad_norm_squared()))
    })
}

/// |(∇u)² − m²u²| / (1 + Σ|∂u|² + m²|u|²) with analytic gradients.
pub fn massive_residual(spec: &MassiveCylSpec, points: &[Point3]) -> Result<ResidualReport> {
    let m2 = spec.mass * spec.mass;
    aggregate(Identity::Massive, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        let lhs = s.grad_squared() - m2 * s.value * s.value;
        Ok(lhs.norm() / (1.0 + s.grad_norm_squared() + m2 * s.value.norm_sqr()))
    })
}

/// |∇²u| / (1 + |∇²u| + Σ|∂u|²), Laplacian by 7-point finite differences.
pub fn laplace_residual(spec: &SolutionSpec, points: &[Point3]) -> Result<ResidualReport> {
    aggregate(Identity::Laplace, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        let h = default_fd_step2(p.norm());
        let lap = fd_laplacian(pole_checked(|q| spec.evaluate(q)), p, h)?;
        Ok(lap.norm() / (1.0 + lap.norm() + s.grad_norm_squared()))
    })
}

/// Static O(3) equation of motion,
/// ∇²u/(1+|u|²)² − 2(∇u)²·u*/(1+|u|²)³ = 0,
/// with (∇u)² analytic and ∇²u by finite differences.
pub fn o3_eom_residual(spec: &SolutionSpec, points: &[Point3]) -> Result<ResidualReport> {
    aggregate(Identity::O3Eom, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        let h = default_fd_step2(p.norm());
        let lap = fd_laplacian(pole_checked(|q| spec.evaluate(q)), p, h)?;
        let denom = 1.0 + s.value.norm_sqr();
        let term1 = lap / (denom * denom);
        let term2 = 2.0 * s.grad_squared() * s.value.conj() / (denom * denom * denom);
        Ok((term1 - term2).norm() / (1.0 + term1.norm() + term2.norm()))
    })
}

/// |∇²u − m_eff²·u| / (1 + |∇²u| + m_eff²|u|) for the planar massive string,
/// m_eff² = m²(1 + 1/√(m²ρ² + n²)).
pub fn effective_mass_residual(
    spec: &MassiveCylSpec,
    points: &[Point3],
) -> Result<ResidualReport> {
    if spec.dim != 2 {
        return Err(Error::InvalidParameter(
            "effective-mass residual applies to the planar (dim = 2) solution".into(),
        ));
    }
    aggregate(Identity::EffectiveMass, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        let (rho, _, _) = p.to_cylindrical();
        let meff2 = spec.effective_mass_squared(rho);
        let h = default_fd_step2(p.norm());
        let lap = fd_laplacian(pole_checked(|q| spec.evaluate(q)), p, h)?;
        let lhs = lap - meff2 * s.value;
        Ok(lhs.norm() / (1.0 + lap.norm() + meff2 * s.value.norm()))
    })
}

/// |∇u_analytic − ∇u_fd| / max(1, |∇u|), central differences.
pub fn gradient_check(spec: &SolutionSpec, points: &[Point3]) -> Result<ResidualReport> {
    aggregate(Identity::GradientCheck, points, |p| {
        let s = spec.evaluate(p)?;
        if s.pole {
            return Err(Error::DomainError(format!("pole inside sample at {p:?}")));
        }
        let h = default_fd_step(p.norm());
        let fd = fd_gradient(pole_checked(|q| spec.evaluate(q)), p, h)?;
        let diff: Real =
            (0..3).map(|i| (s.grad[i] - fd[i]).norm_sqr()).sum::<Real>().sqrt();
        let scale: Real = s.grad_norm_squared().sqrt();
        Ok(diff / scale.max(1.0))
    })
}

/// Residual of an arbitrary complex field against the Laplace operator; used
/// by tests to show non-harmonic fields fail the check.
pub fn laplace_residual_of<F>(field: F, points: &[Point3]) -> Result<ResidualReport>
where
    F: Fn(Real, Real, Real) -> Result<Complex> + Sync,
{
    aggregate(Identity::Laplace, points, |p| {
        let h = default_fd_step2(p.norm());
        let lap = fd_laplacian(&field, p, h)?;
        Ok(lap.norm() / (1.0 + lap.norm()))
    })
}
