//! Braided cylindrical string solutions
//! u(ρ, φ, z) = Σ_j C_j (ρ / (n_j + √(k_j²ρ² + n_j²)))^{±n_j}
//!              e^{±√(k_j²ρ² + n_j²)} e^{±i(n_jφ + k_jz)} + c,
//! valid solutions of (∇u)² = 0 exactly when k_j/n_j is the same for all
//! components.

use super::check_sign;
use crate::{Complex, Error, FieldSample, Point3, Real, Result};
use serde::{Deserialize, Serialize};

const RATIO_TOL: Real = 1e-12;

/// One summand of the multi-string ansatz.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CylComponent {
    /// Complex amplitude C_j (the constants of the separated factors are
    /// absorbed here).
    pub amplitude: Complex,
    /// Angular winding number n_j ≥ 1.
    pub winding: u32,
    /// Axial wavenumber k_j.
    pub wavenumber: Real,
}

/// Multi-component cylindrical string configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CylStringSpec {
    pub components: Vec<CylComponent>,
    /// Additive complex offset c.
    pub offset: Complex,
    /// Global branch: +1 resolves every ± to +, −1 to −.
    pub sign: i8,
}

impl CylStringSpec {
    /// Validating constructor; rejects an empty component list, duplicate
    /// windings, zero windings and k_j/n_j ratio violations.
    pub fn new(components: Vec<CylComponent>, offset: Complex, sign: i8) -> Result<Self> {
        let spec = CylStringSpec { components, offset, sign };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_sign(self.sign)?;
        if self.components.is_empty() {
            return Err(Error::InvalidParameter("component list must be nonempty".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.winding == 0 {
                return Err(Error::InvalidParameter(format!("component {i}: winding must be >= 1")));
            }
            if !c.amplitude.re.is_finite() || !c.amplitude.im.is_finite() || !c.wavenumber.is_finite() {
                return Err(Error::InvalidParameter(format!("component {i}: non-finite parameter")));
            }
            for other in &self.components[..i] {
                if other.winding == c.winding {
                    return Err(Error::DuplicateWinding { n: c.winding });
                }
            }
        }
        let ratio0 = self.components[0].wavenumber / self.components[0].winding as Real;
        for c in &self.components[1..] {
            let ratio = c.wavenumber / c.winding as Real;
            if (ratio - ratio0).abs() > RATIO_TOL * (1.0 + ratio0.abs()) {
                return Err(Error::ConstraintViolation {
                    detail: format!(
                        "k/n = {ratio} for (n = {}, k = {}) differs from {ratio0}",
                        c.winding, c.wavenumber
                    ),
                });
            }
        }
        Ok(())
    }

    /// Largest winding number; the total topological charge of the config.
    pub fn max_winding(&self) -> u32 {
        self.components.iter().map(|c| c.winding).max().unwrap_or(0)
    }

    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        let (rho, phi, z) = p.to_cylindrical();
        let s = self.sign as Real;
        if self.sign < 0 && rho < 1e-12 {
            // negative branch diverges as ρ^{-n} on the axis
            return Ok(FieldSample::pole());
        }
        let mut value = self.offset;
        let mut grad = [Complex::new(0.0, 0.0); 3];
        let (sin_p, cos_p) = phi.sin_cos();
        for c in &self.components {
            let n = c.winding as Real;
            let k = c.wavenumber;
            let srad = (k * k * rho * rho + n * n).sqrt();
            let phase = Complex::new(0.0, s * (n * phi + k * z)).exp();
            // v / ρ stays finite on the axis for the positive branch
            let npow = self.sign as i32 * c.winding as i32;
            let v_over_rho =
                rho.powi(npow - 1) * (n + srad).powi(-npow) * (s * srad).exp();
            let v = c.amplitude * phase * (v_over_rho * rho);
            let q = c.amplitude * phase * v_over_rho;
            value += v;
            // ∂ρ u = s·(S/ρ)·u, (1/ρ)∂φ u = s·i·n·u/ρ, ∂z u = s·i·k·u
            grad[0] += s * q * Complex::new(srad * cos_p, -n * sin_p);
            grad[1] += s * q * Complex::new(srad * sin_p, n * cos_p);
            grad[2] += Complex::new(0.0, s * k) * v;
        }
        Ok(FieldSample::new(value, grad))
    }
}

/// Radial profile R(ρ) of a single C = 1 component:
/// (ρ/(n + √(k²ρ² + n²)))^{±n} · e^{±√(k²ρ² + n²)}.
pub fn radial_profile(n: u32, k: Real, sign: i8, rho: Real) -> Real {
    let nf = n as Real;
    let srad = (k * k * rho * rho + nf * nf).sqrt();
    let npow = sign as i32 * n as i32;
    (rho / (nf + srad)).powi(npow) * (sign as Real * srad).exp()
}

/// dR/dρ = ±(√(k²ρ² + n²)/ρ)·R for the same profile.
pub fn radial_profile_deriv(n: u32, k: Real, sign: i8, rho: Real) -> Real {
    let nf = n as Real;
    let srad = (k * k * rho * rho + nf * nf).sqrt();
    sign as Real * srad / rho * radial_profile(n, k, sign, rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex {
        Complex::new(1.0, 0.0)
    }

    fn comp(n: u32, k: Real) -> CylComponent {
        CylComponent { amplitude: one(), winding: n, wavenumber: k }
    }

    #[test]
    fn fig1_configuration_is_valid() {
        let spec = CylStringSpec::new(vec![comp(2, 1.0)], one(), 1).unwrap();
        assert_eq!(spec.max_winding(), 2);
    }

    #[test]
    fn equal_ratio_components_accepted() {
        CylStringSpec::new(vec![comp(1, 1.0), comp(2, 2.0)], Complex::new(0.0, 0.0), 1).unwrap();
    }

    #[test]
    fn ratio_violation_rejected() {
        let err = CylStringSpec::new(vec![comp(1, 1.0), comp(2, 1.0)], Complex::new(0.0, 0.0), 1)
            .unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation { .. }));
    }

    #[test]
    fn duplicate_winding_rejected() {
        let err = CylStringSpec::new(
            vec![comp(2, 1.0), CylComponent { amplitude: one(), winding: 2, wavenumber: 1.0 }],
            Complex::new(0.0, 0.0),
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateWinding { n: 2 }));
    }

    #[test]
    fn axis_value_vanishes_for_positive_branch() {
        let spec =
            CylStringSpec::new(vec![comp(1, 1.0)], Complex::new(0.0, 0.0), 1).unwrap();
        let sample = spec.evaluate(&Point3::cylindrical(0.0, 0.0, 0.0)).unwrap();
        assert!(!sample.pole);
        assert_eq!(sample.value, Complex::new(0.0, 0.0));
    }

    #[test]
    fn negative_branch_axis_is_a_pole() {
        let spec =
            CylStringSpec::new(vec![comp(1, 1.0)], Complex::new(0.0, 0.0), -1).unwrap();
        let sample = spec.evaluate(&Point3::cylindrical(0.0, 0.0, 0.0)).unwrap();
        assert!(sample.pole);
    }

    #[test]
    fn analytic_gradient_matches_frozen_reference() {
        // single string n = 1, k = 1, C = 1, c = 0, sign = + at (ρ, φ, z) = (1, 0, 0):
        // u = e^{√2}/(1 + √2), ∇u = (√2·u, i·u, i·u). Reference from 30-digit
        // evaluation of the closed form.
        let spec =
            CylStringSpec::new(vec![comp(1, 1.0)], Complex::new(0.0, 0.0), 1).unwrap();
        let sample = spec.evaluate(&Point3::cylindrical(1.0, 0.0, 0.0)).unwrap();
        let u = 1.7037640923281590;
        assert!((sample.value - Complex::new(u, 0.0)).norm() < 1e-14);
        assert!((sample.grad[0] - Complex::new(2.4094862864547685, 0.0)).norm() < 1e-13);
        assert!((sample.grad[1] - Complex::new(0.0, u)).norm() < 1e-13);
        assert!((sample.grad[2] - Complex::new(0.0, u)).norm() < 1e-13);
    }

    #[test]
    fn radial_profile_matches_evaluator() {
        let spec =
            CylStringSpec::new(vec![comp(2, 1.0)], Complex::new(0.0, 0.0), 1).unwrap();
        let sample = spec.evaluate(&Point3::cylindrical(1.3, 0.0, 0.0)).unwrap();
        assert!((sample.value.re - radial_profile(2, 1.0, 1, 1.3)).abs() < 1e-14);
    }
}
