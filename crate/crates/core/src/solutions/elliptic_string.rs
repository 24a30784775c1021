//! Strings on an elliptic cylinder. In elliptic-cylindrical coordinates
//! (η, φ, z) with focal parameter a,
//!
//!   u = C e^{±ikz} e^{±iP·E(iη|m)} e^{±iP·E(φ|m)} + c₀,
//!
//! where P = √(λ² + k²a²/4), m = 1 − 4λ²/(4λ² + k²a²) = k²a²/(4λ² + k²a²),
//! and E is the incomplete elliptic integral of the second kind. The
//! imaginary-amplitude factor is evaluated through the real form
//! E(iη|m) = i·𝔈(η|m), so the η-dependence is the real exponential
//! e^{∓P·𝔈(η|m)}. Single-valuedness in φ forces the quantization condition
//! (2/π)·P·E(m) = n ∈ ℕ.

use super::check_sign;
use crate::elliptic::f64_impl as ell;
use crate::{Complex, Error, FieldSample, Point3, Real, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const QUANT_TOL: Real = 1e-10;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllipticStringSpec {
    pub amplitude: Complex,
    /// Real additive offset c₀ (the locus theory requires it real).
    pub offset: Real,
    pub wavenumber: Real,
    /// Focal parameter a > 0.
    pub focal: Real,
    /// Separation constant λ > 0, tied to `winding` by quantization.
    pub lambda: Real,
    /// Topological index n ≥ 1.
    pub winding: u32,
    pub sign: i8,
}

impl EllipticStringSpec {
    pub fn new(
        amplitude: Complex,
        offset: Real,
        wavenumber: Real,
        focal: Real,
        lambda: Real,
        winding: u32,
        sign: i8,
    ) -> Result<Self> {
        let spec =
            EllipticStringSpec { amplitude, offset, wavenumber, focal, lambda, winding, sign };
        spec.validate()?;
        Ok(spec)
    }

    /// Construct with λ solved from the quantization condition.
    pub fn quantized(
        amplitude: Complex,
        offset: Real,
        wavenumber: Real,
        focal: Real,
        winding: u32,
        sign: i8,
    ) -> Result<Self> {
        let lambda = solve_elliptic_lambda(wavenumber, focal, winding)?;
        Self::new(amplitude, offset, wavenumber, focal, lambda, winding, sign)
    }

    pub fn validate(&self) -> Result<()> {
        check_sign(self.sign)?;
        if !(self.focal > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "focal parameter a must be positive, got {}",
                self.focal
            )));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.winding == 0 {
            return Err(Error::InvalidParameter("winding must be >= 1".into()));
        }
        let lhs = quantization_lhs(self.lambda, self.wavenumber, self.focal);
        let n = self.winding as Real;
        if (lhs - n).abs() > QUANT_TOL {
            return Err(Error::InvalidParameter(format!(
                "quantization condition (2/π)·√(λ² + k²a²/4)·E(1 − 4λ²/(4λ² + k²a²)) = n violated: \
                 lhs = {lhs}, n = {n}"
            )));
        }
        Ok(())
    }

    /// Elliptic parameter m = k²a²/(4λ² + k²a²) ∈ [0, 1).
    pub fn param_m(&self) -> Real {
        let ka = self.wavenumber * self.focal;
        ka * ka / (4.0 * self.lambda * self.lambda + ka * ka)
    }

    /// Angular prefactor P = √(λ² + k²a²/4).
    pub fn prefactor(&self) -> Real {
        let ka = self.wavenumber * self.focal;
        (self.lambda * self.lambda + 0.25 * ka * ka).sqrt()
    }

    /// |e^{±iP·E(iη|m)}| as a function of η: the η-profile e^{∓P·𝔈(η|m)}.
    pub fn eta_profile(&self, eta: Real) -> Real {
        (-(self.sign as Real) * self.prefactor() * ell::e_imag(eta, self.param_m())).exp()
    }

    /// Phase advance P·E(φ|m) of the angular factor.
    pub fn angular_phase(&self, phi: Real) -> Real {
        self.prefactor() * ell::e(phi, self.param_m())
    }

    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        let (eta, phi, z) = p.to_elliptic(self.focal);
        let s = self.sign as Real;
        let m = self.param_m();
        let pref = self.prefactor();
        let k = self.wavenumber;
        let a = self.focal;

        let w = self.amplitude
            * (-s * pref * ell::e_imag(eta, m)).exp()
            * Complex::new(0.0, s * (k * z + pref * ell::e(phi, m))).exp();
        let value = w + Complex::new(self.offset, 0.0);

        // scale factor h² = (a²/4)(sinh²η + sin²φ); degenerate on the focal segment
        let (sh, ch) = (eta.sinh(), eta.cosh());
        let (sp, cp) = phi.sin_cos();
        let h_sq = 0.25 * a * a * (sh * sh + sp * sp);
        if h_sq < 1e-20 {
            return Err(Error::DomainError(format!(
                "elliptic coordinates degenerate near the focal segment (η = {eta}, φ = {phi})"
            )));
        }

        let du_eta = -s * pref * (1.0 + m * sh * sh).sqrt() * w;
        let du_phi = Complex::new(0.0, s * pref * (1.0 - m * sp * sp).sqrt()) * w;
        // position derivatives: ∂(x,y)/∂η and ∂(x,y)/∂φ
        let (x_eta, y_eta) = (0.5 * a * cp * sh, 0.5 * a * sp * ch);
        let (x_phi, y_phi) = (-0.5 * a * sp * ch, 0.5 * a * cp * sh);
        let grad = [
            (du_eta * x_eta + du_phi * x_phi) / h_sq,
            (du_eta * y_eta + du_phi * y_phi) / h_sq,
            Complex::new(0.0, s * k) * w,
        ];
        Ok(FieldSample::new(value, grad))
    }
}

/// Left-hand side of the quantization condition as a function of λ.
pub fn quantization_lhs(lambda: Real, k: Real, a: Real) -> Real {
    let ka = k * a;
    let pref = (lambda * lambda + 0.25 * ka * ka).sqrt();
    let m = ka * ka / (4.0 * lambda * lambda + ka * ka);
    2.0 / PI * pref * ell::e_complete(m)
}

/// Solve the quantization condition (2/π)·√(λ² + k²a²/4)·E(m) = n for λ > 0.
///
/// The left-hand side increases strictly from |k|a/π (λ → 0) to ∞, so a
/// bracketing bisection is reliable. Residual below 1e-10 guaranteed.
pub fn solve_elliptic_lambda(k: Real, a: Real, n: u32) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidParameter("winding must be >= 1".into()));
    }
    if !(a >= 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("need a >= 0 and finite k, got a = {a}, k = {k}")));
    }
    let target = n as Real;
    // degenerate focal parameter: m → 0, E(0) = π/2, condition reduces to λ = n
    if k == 0.0 || a == 0.0 {
        return Ok(target);
    }
    if k.abs() * a / PI >= target {
        return Err(Error::NoRoot {
            lo: 0.0,
            hi: 0.0,
            detail: format!("lhs at λ → 0 is |k|a/π = {} >= n = {target}", k.abs() * a / PI),
        });
    }
    let mut lo = 0.0;
    let mut hi = target.max(1.0);
    let mut guard = 0;
    while quantization_lhs(hi, k, a) < target {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::NoRoot {
                lo,
                hi,
                detail: "quantization lhs never reached n while expanding the bracket".into(),
            });
        }
    }
    // bisection to near machine precision; the lhs is smooth and monotone
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if quantization_lhs(mid, k, a) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    debug_assert!((quantization_lhs(lambda, k, a) - target).abs() < 1e-10);
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_solution_satisfies_condition() {
        for n in 1..=3u32 {
            let lambda = solve_elliptic_lambda(1.0, 1.0, n).unwrap();
            assert!((quantization_lhs(lambda, 1.0, 1.0) - n as Real).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_roots_match_frozen_bisection_oracle() {
        // 30-digit bisection on directly quadratured E, k = 1, a = 1
        let expected = [0.9364590314635742, 1.9686259976214606, 2.979130245081527];
        for (i, want) in expected.iter().enumerate() {
            let got = solve_elliptic_lambda(1.0, 1.0, i as u32 + 1).unwrap();
            assert!((got - want).abs() < 1e-9, "n = {}: {got} vs {want}", i + 1);
        }
    }

    #[test]
    fn lambda_increases_with_winding() {
        let l1 = solve_elliptic_lambda(1.0, 1.0, 1).unwrap();
        let l2 = solve_elliptic_lambda(1.0, 1.0, 2).unwrap();
        assert!(l2 > l1);
    }

    #[test]
    fn degenerate_focal_limit_gives_integer_lambda() {
        assert_eq!(solve_elliptic_lambda(1.0, 0.0, 3).unwrap(), 3.0);
        let l = solve_elliptic_lambda(1.0, 1e-6, 2).unwrap();
        assert!((l - 2.0).abs() < 1e-4);
    }

    #[test]
    fn quantization_violation_rejected() {
        let err = EllipticStringSpec::new(
            Complex::new(1.0, 0.0),
            0.5,
            1.0,
            1.0,
            0.7, // not a quantized λ for n = 1
            1,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn single_valued_when_quantized() {
        let spec =
            EllipticStringSpec::quantized(Complex::new(1.0, 0.0), 0.5, 1.0, 1.0, 1, 1).unwrap();
        for i in 0..20 {
            let eta = 0.2 + 0.1 * i as Real;
            let phi = 0.37 * i as Real;
            let z = 0.11 * i as Real - 1.0;
            let a = spec
                .evaluate(&Point3::EllipticCylindrical { eta, phi, z, a: 1.0 })
                .unwrap();
            let b = spec
                .evaluate(&Point3::EllipticCylindrical {
                    eta,
                    phi: phi + std::f64::consts::TAU,
                    z,
                    a: 1.0,
                })
                .unwrap();
            assert!((a.value - b.value).norm() < 1e-8, "not single-valued at i = {i}");
        }
    }
}
