//! Coordinate systems, the stereographic projection onto the unit 3-vector
//! field, and finite-difference kernels shared by the residual checks.

use crate::{Complex, Error, Real, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A point in 3-space, tagged with the coordinate system it was given in.
///
/// Radial coordinates (ρ, r, η) are kept non-negative and angles are reduced
/// to canonical ranges on construction. All evaluators work through
/// [`Point3::to_cartesian`]; the tagged representation exists so specs can be
/// sampled in their natural coordinates without lossy pre-conversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "coords", rename_all = "snake_case")]
pub enum Point3 {
    Cartesian { x: Real, y: Real, z: Real },
    Cylindrical { rho: Real, phi: Real, z: Real },
    Spherical { r: Real, theta: Real, phi: Real },
    /// Elliptic-cylindrical (η, φ, z) with focal parameter a:
    /// x = (a/2) cos φ cosh η, y = (a/2) sin φ sinh η.
    EllipticCylindrical { eta: Real, phi: Real, z: Real, a: Real },
}

/// Reduce an angle to [0, 2π).
pub fn wrap_angle(phi: Real) -> Real {
    let mut p = phi % TAU;
    if p < 0.0 {
        p += TAU;
    }
    p
}

impl Point3 {
    pub fn cartesian(x: Real, y: Real, z: Real) -> Self {
        Point3::Cartesian { x, y, z }
    }

    pub fn cylindrical(rho: Real, phi: Real, z: Real) -> Self {
        assert!(rho >= 0.0, "cylindrical radius must be non-negative");
        Point3::Cylindrical { rho, phi: wrap_angle(phi), z }
    }

    pub fn spherical(r: Real, theta: Real, phi: Real) -> Self {
        assert!(r >= 0.0, "spherical radius must be non-negative");
        assert!((0.0..=PI).contains(&theta), "theta must lie in [0, π]");
        Point3::Spherical { r, theta, phi: wrap_angle(phi) }
    }

    pub fn elliptic(eta: Real, phi: Real, z: Real, a: Real) -> Self {
        assert!(eta >= 0.0, "eta must be non-negative");
        assert!(a > 0.0, "focal parameter a must be positive");
        Point3::EllipticCylindrical { eta, phi: wrap_angle(phi), z, a }
    }

    /// Cartesian components (x, y, z).
    pub fn to_cartesian(&self) -> (Real, Real, Real) {
        match *self {
            Point3::Cartesian { x, y, z } => (x, y, z),
            Point3::Cylindrical { rho, phi, z } => (rho * phi.cos(), rho * phi.sin(), z),
            Point3::Spherical { r, theta, phi } => (
                r * theta.sin() * phi.cos(),
                r * theta.sin() * phi.sin(),
                r * theta.cos(),
            ),
            Point3::EllipticCylindrical { eta, phi, z, a } => (
                0.5 * a * phi.cos() * eta.cosh(),
                0.5 * a * phi.sin() * eta.sinh(),
                z,
            ),
        }
    }

    /// Cylindrical components (ρ, φ, z).
    pub fn to_cylindrical(&self) -> (Real, Real, Real) {
        if let Point3::Cylindrical { rho, phi, z } = *self {
            return (rho, phi, z);
        }
        let (x, y, z) = self.to_cartesian();
        ((x * x + y * y).sqrt(), wrap_angle(y.atan2(x)), z)
    }

    /// Spherical components (r, θ, φ).
    pub fn to_spherical(&self) -> (Real, Real, Real) {
        if let Point3::Spherical { r, theta, phi } = *self {
            return (r, theta, phi);
        }
        let (x, y, z) = self.to_cartesian();
        let r = (x * x + y * y + z * z).sqrt();
        let theta = if r == 0.0 { 0.0 } else { (z / r).clamp(-1.0, 1.0).acos() };
        (r, theta, wrap_angle(y.atan2(x)))
    }

    /// Elliptic-cylindrical components (η, φ, z) for focal parameter `a`.
    ///
    /// Inverts x + iy = (a/2) cosh(η + iφ) through the principal complex
    /// arccosh, so η ≥ 0 and φ ∈ [0, 2π).
    pub fn to_elliptic(&self, a: Real) -> (Real, Real, Real) {
        if let Point3::EllipticCylindrical { eta, phi, z, a: a0 } = *self {
            if (a0 - a).abs() <= 1e-15 * a.abs() {
                return (eta, phi, z);
            }
        }
        let (x, y, z) = self.to_cartesian();
        let w = Complex::new(2.0 * x / a, 2.0 * y / a).acosh();
        (w.re.max(0.0), wrap_angle(w.im), z)
    }

    /// Euclidean norm of the Cartesian representation.
    pub fn norm(&self) -> Real {
        let (x, y, z) = self.to_cartesian();
        (x * x + y * y + z * z).sqrt()
    }
}

/// Field value and analytic Cartesian gradient at one point.
///
/// `pole` marks points where u → ∞ (e.g. the hedgehog tan-pole at θ = π);
/// when set, `value` and `grad` are unspecified and must not be read.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub value: Complex,
    pub grad: [Complex; 3],
    pub pole: bool,
}

impl FieldSample {
    pub fn new(value: Complex, grad: [Complex; 3]) -> Self {
        FieldSample { value, grad, pole: false }
    }

    pub fn pole() -> Self {
        FieldSample {
            value: Complex::new(0.0, 0.0),
            grad: [Complex::new(0.0, 0.0); 3],
            pole: true,
        }
    }

    /// (∇u)² = Σ (∂_i u)², the complex eikonal quadratic form.
    pub fn grad_squared(&self) -> Complex {
        self.grad.iter().map(|g| g * g).sum()
    }

    /// Σ |∂_i u|², used as the scale floor of relative residuals.
    pub fn grad_norm_squared(&self) -> Real {
        self.grad.iter().map(|g| g.norm_sqr()).sum()
    }
}

/// Unit vector on the target 2-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitVector3 {
    pub n1: Real,
    pub n2: Real,
    pub n3: Real,
}

impl UnitVector3 {
    pub fn dot(&self, other: &UnitVector3) -> Real {
        self.n1 * other.n1 + self.n2 * other.n2 + self.n3 * other.n3
    }

    pub fn cross(&self, other: &UnitVector3) -> UnitVector3 {
        UnitVector3 {
            n1: self.n2 * other.n3 - self.n3 * other.n2,
            n2: self.n3 * other.n1 - self.n1 * other.n3,
            n3: self.n1 * other.n2 - self.n2 * other.n1,
        }
    }

    pub fn norm(&self) -> Real {
        self.dot(self).sqrt()
    }
}

/// Stereographic projection of a complex field value onto the unit sphere,
/// n⃗ = (u + u*, −i(u − u*), |u|² − 1) / (1 + |u|²).
///
/// `None` stands for the pole u → ∞ and maps to the north pole (0, 0, 1);
/// u = 0 maps to the south pole (0, 0, −1).
pub fn stereographic_project(u: Option<Complex>) -> UnitVector3 {
    match u {
        None => UnitVector3 { n1: 0.0, n2: 0.0, n3: 1.0 },
        Some(u) => {
            let norm_sqr = u.norm_sqr();
            // For very large |u| the quotient formula loses all significance;
            // switch to the 1/u expansion around the north pole.
            if norm_sqr > 1e30 {
                let inv = u.inv();
                let s = inv.norm_sqr();
                let denom = 1.0 + s;
                return UnitVector3 {
                    n1: 2.0 * inv.re / denom,
                    n2: -2.0 * inv.im / denom,
                    n3: (1.0 - s) / denom,
                };
            }
            let denom = 1.0 + norm_sqr;
            UnitVector3 {
                n1: 2.0 * u.re / denom,
                n2: 2.0 * u.im / denom,
                n3: (norm_sqr - 1.0) / denom,
            }
        }
    }
}

/// Project a [`FieldSample`], routing the pole flag to the north pole.
pub fn project_sample(sample: &FieldSample) -> UnitVector3 {
    if sample.pole {
        stereographic_project(None)
    } else {
        stereographic_project(Some(sample.value))
    }
}

/// Default first-derivative step at a point of norm `scale`.
pub fn default_fd_step(scale: Real) -> Real {
    1e-5 * scale.max(1.0)
}

/// Default second-derivative step at a point of norm `scale`.
pub fn default_fd_step2(scale: Real) -> Real {
    1e-4 * scale.max(1.0)
}

/// Central-difference Cartesian gradient of a complex field, O(h²).
///
/// `field` evaluates u at Cartesian coordinates and fails on poles or domain
/// exits; any stencil failure is propagated.
pub fn fd_gradient<F>(field: F, p: &Point3, h: Real) -> Result<[Complex; 3]>
where
    F: Fn(Real, Real, Real) -> Result<Complex>,
{
    assert!(h > 0.0, "finite-difference step must be positive");
    let (x, y, z) = p.to_cartesian();
    let gx = (field(x + h, y, z)? - field(x - h, y, z)?) / (2.0 * h);
    let gy = (field(x, y + h, z)? - field(x, y - h, z)?) / (2.0 * h);
    let gz = (field(x, y, z + h)? - field(x, y, z - h)?) / (2.0 * h);
    Ok([gx, gy, gz])
}

/// 7-point second-difference Laplacian of a complex field, O(h²).
pub fn fd_laplacian<F>(field: F, p: &Point3, h: Real) -> Result<Complex>
where
    F: Fn(Real, Real, Real) -> Result<Complex>,
{
    assert!(h > 0.0, "finite-difference step must be positive");
    let (x, y, z) = p.to_cartesian();
    let center = field(x, y, z)?;
    let sum = field(x + h, y, z)?
        + field(x - h, y, z)?
        + field(x, y + h, z)?
        + field(x, y - h, z)?
        + field(x, y, z + h)?
        + field(x, y, z - h)?;
    Ok((sum - 6.0 * center) / (h * h))
}

/// Helper shared by the stencil kernels: evaluate a spec and reject poles.
pub fn pole_checked<E>(eval: E) -> impl Fn(Real, Real, Real) -> Result<Complex>
where
    E: Fn(&Point3) -> Result<FieldSample>,
{
    move |x, y, z| {
        let s = eval(&Point3::cartesian(x, y, z))?;
        if s.pole {
            Err(Error::StencilSingular(format!("pole at ({x}, {y}, {z})")))
        } else {
            Ok(s.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Real, b: Real, tol: Real) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn stereographic_fixed_points() {
        let south = stereographic_project(Some(Complex::new(0.0, 0.0)));
        assert_eq!((south.n1, south.n2, south.n3), (0.0, 0.0, -1.0));
        let east = stereographic_project(Some(Complex::new(1.0, 0.0)));
        assert_eq!((east.n1, east.n2, east.n3), (1.0, 0.0, 0.0));
        let north_of_i = stereographic_project(Some(Complex::new(0.0, 1.0)));
        assert_eq!((north_of_i.n1, north_of_i.n2, north_of_i.n3), (0.0, 1.0, 0.0));
        let pole = stereographic_project(None);
        assert_eq!((pole.n1, pole.n2, pole.n3), (0.0, 0.0, 1.0));
    }

    #[test]
    fn fd_gradient_linear_field_is_exact() {
        // u = x + iy
        let field = |x: Real, y: Real, _z: Real| Ok(Complex::new(x, y));
        let g = fd_gradient(field, &Point3::cartesian(0.3, -0.7, 1.1), 1e-5).unwrap();
        assert!((g[0] - Complex::new(1.0, 0.0)).norm() < 1e-9);
        assert!((g[1] - Complex::new(0.0, 1.0)).norm() < 1e-9);
        assert!(g[2].norm() < 1e-9);
    }

    #[test]
    fn fd_gradient_constant_field_is_zero() {
        let field = |_x: Real, _y: Real, _z: Real| Ok(Complex::new(2.5, -1.0));
        let g = fd_gradient(field, &Point3::cartesian(1.0, 2.0, 3.0), 1e-5).unwrap();
        for c in g {
            assert!(c.norm() < 1e-12);
        }
    }

    #[test]
    fn fd_laplacian_quadratic_and_harmonic() {
        let quad = |x: Real, y: Real, z: Real| Ok(Complex::new(x * x + y * y + z * z, 0.0));
        let l = fd_laplacian(quad, &Point3::cartesian(0.4, 0.2, -0.3), 1e-4).unwrap();
        assert!((l - Complex::new(6.0, 0.0)).norm() < 1e-6);

        let lin = |x: Real, y: Real, _z: Real| Ok(Complex::new(x, y));
        let l = fd_laplacian(lin, &Point3::cartesian(1.0, 1.0, 1.0), 1e-4).unwrap();
        assert!(l.norm() < 1e-9);
    }

    #[test]
    fn fd_gradient_propagates_stencil_failures() {
        let field = |x: Real, _y: Real, _z: Real| {
            if x > 1.0 {
                Err(Error::DomainError("x > 1".into()))
            } else {
                Ok(Complex::new(x, 0.0))
            }
        };
        assert!(fd_gradient(field, &Point3::cartesian(1.0, 0.0, 0.0), 1e-3).is_err());
    }

    #[test]
    fn elliptic_inverse_matches_forward() {
        let a = 1.3;
        let p = Point3::elliptic(0.8, 2.1, -0.4, a);
        let (x, y, z) = p.to_cartesian();
        let (eta, phi, zz) = Point3::cartesian(x, y, z).to_elliptic(a);
        assert!(close(eta, 0.8, 1e-12) && close(phi, 2.1, 1e-12) && close(zz, -0.4, 1e-12));
    }

    proptest! {
        #[test]
        fn stereographic_output_is_unit_norm(re in -1e8..1e8f64, im in -1e8..1e8f64) {
            let n = stereographic_project(Some(Complex::new(re, im)));
            prop_assert!((n.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn cylindrical_round_trip(rho in 1e-6..10.0f64, phi in 0.0..std::f64::consts::TAU, z in -5.0..5.0f64) {
            let p = Point3::cylindrical(rho, phi, z);
            let (x, y, zz) = p.to_cartesian();
            let (r2, p2, z2) = Point3::cartesian(x, y, zz).to_cylindrical();
            prop_assert!(close(r2, rho, 1e-12 * (1.0 + rho)));
            prop_assert!(close(p2, phi, 1e-9) || close((p2 - phi).abs(), TAU, 1e-9));
            prop_assert!(close(z2, z, 1e-12));
        }

        #[test]
        fn spherical_round_trip(r in 1e-6..10.0f64, theta in 1e-6..(PI - 1e-6), phi in 0.0..TAU) {
            let p = Point3::spherical(r, theta, phi);
            let (x, y, z) = p.to_cartesian();
            let (r2, t2, p2) = Point3::cartesian(x, y, z).to_spherical();
            prop_assert!(close(r2, r, 1e-12 * (1.0 + r)));
            prop_assert!(close(t2, theta, 1e-9));
            prop_assert!(close(p2, phi, 1e-9) || close((p2 - phi).abs(), TAU, 1e-9));
        }

        #[test]
        fn elliptic_round_trip(eta in 1e-6..3.0f64, phi in 0.0..TAU, z in -5.0..5.0f64, a in 0.5..2.0f64) {
            let p = Point3::elliptic(eta, phi, z, a);
            let (x, y, zz) = p.to_cartesian();
            let (e2, p2, z2) = Point3::cartesian(x, y, zz).to_elliptic(a);
            prop_assert!(close(e2, eta, 1e-9 * (1.0 + eta)));
            prop_assert!(close(p2, phi, 1e-9) || close((p2 - phi).abs(), TAU, 1e-9));
            prop_assert!(close(z2, z, 1e-12));
        }
    }
}
