//! Composition u = F(u₀) of a base solution with a real polynomial F.
//! For a massless base, (∇F(u₀))² = F′(u₀)²·(∇u₀)² = 0, so any polynomial
//! of a solution is again a solution; the same closure fails for the massive
//! equation.

use crate::solutions::SolutionSpec;
use crate::{Complex, Error, FieldSample, Point3, Real, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub base: Box<SolutionSpec>,
    /// Real polynomial coefficients a₀ … a_d, F(w) = Σ a_i wⁱ, d ≥ 1.
    pub coeffs: Vec<Real>,
}

impl CompositeSpec {
    pub fn new(base: SolutionSpec, coeffs: Vec<Real>) -> Result<Self> {
        let spec = CompositeSpec { base: Box::new(base), coeffs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.coeffs.len() < 2 {
            return Err(Error::InvalidParameter(
                "polynomial must have degree >= 1 (at least two coefficients)".into(),
            ));
        }
        if self.coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("polynomial coefficients must be finite".into()));
        }
        Ok(())
    }

    /// F(w) and F′(w) by Horner evaluation.
    fn poly_and_deriv(&self, w: Complex) -> (Complex, Complex) {
        let mut f = Complex::new(0.0, 0.0);
        let mut df = Complex::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            df = df * w + f;
            f = f * w + a;
        }
        (f, df)
    }

    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        let base = self.base.evaluate(p)?;
        if base.pole {
            // a polynomial of degree >= 1 keeps the pole
            return Ok(FieldSample::pole());
        }
        let (f, df) = self.poly_and_deriv(base.value);
        let grad = [df * base.grad[0], df * base.grad[1], df * base.grad[2]];
        Ok(FieldSample::new(f, grad))
    }
}
