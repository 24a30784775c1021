//! Massive eikonal strings, (∇u)² = m²u²: the massless cylindrical solution
//! with k² → k² + m² in the radial factor (3D), or with the z-dependence
//! dropped entirely (2D planar variant, phase e^{±inφ}).

use super::check_sign;
use crate::{Complex, Error, FieldSample, Point3, Real, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassiveCylSpec {
    pub amplitude: Complex,
    /// Angular winding n ≥ 1.
    pub winding: u32,
    /// Axial wavenumber k; ignored when `dim` = 2.
    pub wavenumber: Real,
    /// Mass m > 0.
    pub mass: Real,
    pub sign: i8,
    /// 3 for the full solution, 2 for the planar one.
    pub dim: u8,
}

impl MassiveCylSpec {
    pub fn new(
        amplitude: Complex,
        winding: u32,
        wavenumber: Real,
        mass: Real,
        sign: i8,
        dim: u8,
    ) -> Result<Self> {
        let spec = MassiveCylSpec { amplitude, winding, wavenumber, mass, sign, dim };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_sign(self.sign)?;
        if !(self.mass > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {}", self.mass)));
        }
        if self.winding == 0 {
            return Err(Error::InvalidParameter("winding must be >= 1".into()));
        }
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::InvalidParameter(format!("dim must be 2 or 3, got {}", self.dim)));
        }
        Ok(())
    }

    /// Effective wavenumber entering the radial factor: k² + m² in 3D, m² in 2D.
    fn radial_k_squared(&self) -> Real {
        match self.dim {
            2 => self.mass * self.mass,
            _ => self.wavenumber * self.wavenumber + self.mass * self.mass,
        }
    }

    /// Axial wavenumber of the phase; zero in the planar case.
    fn phase_k(&self) -> Real {
        if self.dim == 2 {
            0.0
        } else {
            self.wavenumber
        }
    }

    /// m_eff² = m²(1 + 1/√(m²ρ² + n²)), the effective-mass profile of the
    /// dynamical equation ∇²u = m_eff²·u satisfied by the planar solution.
    pub fn effective_mass_squared(&self, rho: Real) -> Real {
        let n = self.winding as Real;
        let m2 = self.mass * self.mass;
        m2 * (1.0 + 1.0 / (m2 * rho * rho + n * n).sqrt())
    }

    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        let (rho, phi, z) = p.to_cylindrical();
        let s = self.sign as Real;
        if self.sign < 0 && rho < 1e-12 {
            return Ok(FieldSample::pole());
        }
        let n = self.winding as Real;
        let kr2 = self.radial_k_squared();
        let kp = self.phase_k();
        let srad = (kr2 * rho * rho + n * n).sqrt();
        let (sin_p, cos_p) = phi.sin_cos();
        let phase = Complex::new(0.0, s * (n * phi + kp * z)).exp();
        let npow = self.sign as i32 * self.winding as i32;
        let v_over_rho = rho.powi(npow - 1) * (n + srad).powi(-npow) * (s * srad).exp();
        let v = self.amplitude * phase * (v_over_rho * rho);
        let q = self.amplitude * phase * v_over_rho;
        let grad = [
            s * q * Complex::new(srad * cos_p, -n * sin_p),
            s * q * Complex::new(srad * sin_p, n * cos_p),
            Complex::new(0.0, s * kp) * v,
        ];
        Ok(FieldSample::new(v, grad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::{CylComponent, CylStringSpec};

    #[test]
    fn rejects_nonpositive_mass() {
        assert!(MassiveCylSpec::new(Complex::new(1.0, 0.0), 1, 1.0, 0.0, 1, 3).is_err());
        assert!(MassiveCylSpec::new(Complex::new(1.0, 0.0), 1, 1.0, -1.0, 1, 3).is_err());
    }

    #[test]
    fn planar_axis_value_vanishes() {
        let spec = MassiveCylSpec::new(Complex::new(1.0, 0.0), 1, 0.0, 1.0, 1, 2).unwrap();
        let sample = spec.evaluate(&Point3::cylindrical(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(sample.value, Complex::new(0.0, 0.0));
    }

    #[test]
    fn small_mass_limit_approaches_massless_solution() {
        let massless = CylStringSpec::new(
            vec![CylComponent { amplitude: Complex::new(1.0, 0.0), winding: 2, wavenumber: 1.0 }],
            Complex::new(0.0, 0.0),
            1,
        )
        .unwrap();
        let massive = MassiveCylSpec::new(Complex::new(1.0, 0.0), 2, 1.0, 1e-6, 1, 3).unwrap();
        for i in 0..10 {
            let p = Point3::cylindrical(0.3 + 0.4 * i as Real, 0.7 * i as Real, 0.2 * i as Real);
            let a = massless.evaluate(&p).unwrap().value;
            let b = massive.evaluate(&p).unwrap().value;
            assert!((a - b).norm() < 1e-8 * (1.0 + a.norm()), "mismatch at i = {i}");
        }
    }

    #[test]
    fn planar_solution_has_no_z_dependence() {
        let spec = MassiveCylSpec::new(Complex::new(1.0, 0.0), 1, 5.0, 1.0, 1, 2).unwrap();
        let a = spec.evaluate(&Point3::cylindrical(1.0, 0.5, 0.0)).unwrap();
        let b = spec.evaluate(&Point3::cylindrical(1.0, 0.5, 3.0)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.grad[2], Complex::new(0.0, 0.0));
    }
}
