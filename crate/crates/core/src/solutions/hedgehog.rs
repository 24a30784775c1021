//! Spherical hedgehog (monopole) configurations.
//!
//! The topological family (`m_pow` absent) is r-independent:
//!
//!   u(θ, φ) = Σ_j C_j (tan(θ/2))^{±n_j} e^{±i n_j φ} + c,
//!
//! and solves the eikonal equation, the Laplace equation and the static O(3)
//! sigma-model equation of motion simultaneously.
//!
//! The general separable family (`m_pow` = μ ≠ 0 present) is
//!
//!   u(r, θ, φ) = C r^{±μ} e^{±J(θ)} e^{±inφ},
//!   J(θ) = (n/2)·ln((V − n cos θ)/(V + n cos θ)) + μ·asinh(μ cos θ/√(n² − μ²)),
//!   V(θ) = √(n² − μ² sin²θ),
//!
//! with J′(θ) = V/sin θ, so that (∇u)² = u²(μ² + V² − n²)/(r² sin²θ)·… = 0
//! exactly. J reduces to n·ln tan(θ/2) as μ → 0. This closed form is the
//! smooth continuation through θ = π/2 of the separated θ-equation
//! g′²/g² = n²/sin²θ − μ² and requires |μ| < n.

use super::check_sign;
use crate::{Complex, Error, FieldSample, Point3, Real, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angular collar around θ ∈ {0, π} treated as the pole/limit region.
const THETA_COLLAR: Real = 1e-12;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HedgehogComponent {
    pub amplitude: Complex,
    /// Winding number n_j ≥ 1.
    pub winding: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HedgehogSpec {
    pub components: Vec<HedgehogComponent>,
    pub offset: Complex,
    pub sign: i8,
    /// Radial power μ of the general single-component family; `None` selects
    /// the topological (r-independent) form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_pow: Option<Real>,
}

impl HedgehogSpec {
    pub fn new(
        components: Vec<HedgehogComponent>,
        offset: Complex,
        sign: i8,
        m_pow: Option<Real>,
    ) -> Result<Self> {
        let spec = HedgehogSpec { components, offset, sign, m_pow };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_sign(self.sign)?;
        if self.components.is_empty() {
            return Err(Error::InvalidParameter("component list must be nonempty".into()));
        }
        if self.components.iter().any(|c| c.winding == 0) {
            return Err(Error::InvalidParameter("winding numbers must be >= 1".into()));
        }
        if let Some(mu) = self.m_pow {
            if self.components.len() != 1 {
                return Err(Error::InvalidParameter(
                    "the general family (m_pow present) is single-component".into(),
                ));
            }
            let n = self.components[0].winding as Real;
            if !(mu.abs() < n) {
                return Err(Error::InvalidParameter(format!(
                    "general family requires |m_pow| < n, got |{mu}| >= {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn max_winding(&self) -> u32 {
        self.components.iter().map(|c| c.winding).max().unwrap_or(0)
    }

    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        let (r, theta, phi) = p.to_spherical();
        if r <= 0.0 {
            return Err(Error::DomainError("hedgehog fields require r > 0".into()));
        }
        // tan(θ/2)^{+n} blows up at θ = π, the inverse branch at θ = 0
        if (self.sign > 0 && theta >= PI - THETA_COLLAR)
            || (self.sign < 0 && theta <= THETA_COLLAR)
        {
            return Ok(FieldSample::pole());
        }
        match self.m_pow {
            None => self.evaluate_topological(r, theta, phi),
            Some(mu) => self.evaluate_general(mu, r, theta, phi),
        }
    }

    fn evaluate_topological(&self, r: Real, theta: Real, phi: Real) -> Result<FieldSample> {
        let s = self.sign as Real;
        let t = (0.5 * theta).tan();
        let cos_half_sq = {
            let c = (0.5 * theta).cos();
            c * c
        };
        let mut value = self.offset;
        // both angular derivatives share Σ s·n_j·(u_j / sin θ)
        let mut dsum = Complex::new(0.0, 0.0);
        for c in &self.components {
            let n = c.winding as Real;
            let npow = self.sign as i32 * c.winding as i32;
            let phase = Complex::new(0.0, s * n * phi).exp();
            let v = c.amplitude * phase * t.powi(npow);
            // u_j / sin θ = t^{±n − 1}/(2 cos²(θ/2)), finite at the regular pole
            let w = c.amplitude * phase * t.powi(npow - 1) / (2.0 * cos_half_sq);
            value += v;
            dsum += s * n * w;
        }
        Ok(FieldSample::new(value, cartesian_angular_grad(dsum, dsum * Complex::i(), r, theta, phi)))
    }

    fn evaluate_general(&self, mu: Real, r: Real, theta: Real, phi: Real) -> Result<FieldSample> {
        let s = self.sign as Real;
        let comp = &self.components[0];
        let n = comp.winding as Real;
        let (st, ct) = theta.sin_cos();
        let v_theta = (n * n - mu * mu * st * st).sqrt();
        let j = 0.5 * n * ((v_theta - n * ct) / (v_theta + n * ct)).ln()
            + mu * (mu * ct / (n * n - mu * mu).sqrt()).asinh();
        let phase = Complex::new(0.0, s * n * phi).exp();
        let value_c = comp.amplitude * r.powf(s * mu) * (s * j).exp() * phase;
        let value = value_c + self.offset;

        // ∂r u = ±μ u/r, ∂θ u = ±(V/sinθ) u, ∂φ u = ±i n u
        let du_r = s * mu / r * value_c;
        let dtheta_over_r = s * v_theta / (r * st) * value_c;
        let dphi_over_rsin = Complex::new(0.0, s * n) / (r * st) * value_c;

        let (sp, cp) = phi.sin_cos();
        let r_hat = [st * cp, st * sp, ct];
        let theta_hat = [ct * cp, ct * sp, -st];
        let phi_hat = [-sp, cp, 0.0];
        let mut grad = [Complex::new(0.0, 0.0); 3];
        for i in 0..3 {
            grad[i] = du_r * r_hat[i] + dtheta_over_r * theta_hat[i] + dphi_over_rsin * phi_hat[i];
        }
        Ok(FieldSample::new(value, grad))
    }
}

/// Assemble a Cartesian gradient from (1/r)∂θu and (1/(r sinθ))∂φu for an
/// r-independent field.
fn cartesian_angular_grad(
    dtheta_over_rsin_scaled: Complex,
    dphi_scaled: Complex,
    r: Real,
    theta: Real,
    phi: Real,
) -> [Complex; 3] {
    // inputs carry the common factor Σ s n_j u_j / sin θ; dividing by r gives
    // exactly (1/r)∂θu and (1/(r sinθ))∂φu
    let dt = dtheta_over_rsin_scaled / r;
    let dp = dphi_scaled / r;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [
        dt * (ct * cp) + dp * (-sp),
        dt * (ct * sp) + dp * cp,
        dt * (-st),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex {
        Complex::new(1.0, 0.0)
    }

    fn unit_hedgehog() -> HedgehogSpec {
        HedgehogSpec::new(
            vec![HedgehogComponent { amplitude: one(), winding: 1 }],
            Complex::new(0.0, 0.0),
            1,
            None,
        )
        .unwrap()
    }

    #[test]
    fn equator_value_is_one() {
        let sample = unit_hedgehog()
            .evaluate(&Point3::spherical(1.0, std::f64::consts::FRAC_PI_2, 0.0))
            .unwrap();
        assert!((sample.value - one()).norm() < 1e-14);
    }

    #[test]
    fn south_pole_flagged() {
        let sample = unit_hedgehog().evaluate(&Point3::spherical(1.0, PI, 0.3)).unwrap();
        assert!(sample.pole);
    }

    #[test]
    fn r_independent_values() {
        let spec = unit_hedgehog();
        let a = spec.evaluate(&Point3::spherical(0.5, 1.0, 2.0)).unwrap();
        let b = spec.evaluate(&Point3::spherical(7.0, 1.0, 2.0)).unwrap();
        assert!((a.value - b.value).norm() < 1e-14);
    }

    #[test]
    fn origin_rejected() {
        assert!(matches!(
            unit_hedgehog().evaluate(&Point3::spherical(0.0, 1.0, 0.0)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn general_family_requires_m_pow_below_winding() {
        let err = HedgehogSpec::new(
            vec![HedgehogComponent { amplitude: one(), winding: 2 }],
            Complex::new(0.0, 0.0),
            1,
            Some(2.5),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn general_family_rejects_multiple_components() {
        let err = HedgehogSpec::new(
            vec![
                HedgehogComponent { amplitude: one(), winding: 2 },
                HedgehogComponent { amplitude: one(), winding: 1 },
            ],
            Complex::new(0.0, 0.0),
            1,
            Some(0.5),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn general_family_reduces_to_topological_at_zero_power() {
        // the μ → 0 limit of the general closed form is (tan θ/2)^n
        let top = HedgehogSpec::new(
            vec![HedgehogComponent { amplitude: one(), winding: 2 }],
            Complex::new(0.0, 0.0),
            1,
            None,
        )
        .unwrap();
        let gen = HedgehogSpec::new(
            vec![HedgehogComponent { amplitude: one(), winding: 2 }],
            Complex::new(0.0, 0.0),
            1,
            Some(1e-9),
        )
        .unwrap();
        for i in 1..6 {
            let p = Point3::spherical(1.7, 0.5 * i as Real, 0.9);
            let a = top.evaluate(&p).unwrap().value;
            let b = gen.evaluate(&p).unwrap().value;
            assert!((a - b).norm() < 1e-6 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn general_theta_factor_solves_its_ode() {
        // J′(θ) must equal V/sinθ; checked by central differences through
        // θ = π/2 where the naive arctan form of the antiderivative kinks.
        let n = 3.0;
        let mu = 1.7;
        let j = |theta: Real| -> Real {
            let (st, ct) = theta.sin_cos();
            let v = (n * n - mu * mu * st * st).sqrt();
            0.5 * n * ((v - n * ct) / (v + n * ct)).ln()
                + mu * (mu * ct / (n * n - mu * mu).sqrt()).asinh()
        };
        let h = 1e-6;
        for theta in [0.4, 1.0, std::f64::consts::FRAC_PI_2, 2.0, 2.7] {
            let num = (j(theta + h) - j(theta - h)) / (2.0 * h);
            let (st, _) = theta.sin_cos();
            let v = (n * n - mu * mu * st * st).sqrt();
            assert!(
                (num - v / st).abs() < 1e-6 * (1.0 + (v / st).abs()),
                "ODE residual at θ = {theta}: {num} vs {}",
                v / st
            );
        }
    }
}
