//! Incomplete and complete elliptic integrals of the second kind, including
//! the imaginary-amplitude form needed by the elliptic-cylinder strings.
//!
//! Everything here is generic over the floating scalar; the rest of the crate
//! uses the `f64` instantiation. Evaluation goes through the Carlson symmetric
//! forms R_F and R_D (duplication algorithm), which keeps the implementation
//! independent of the direct-quadrature oracle the test suite checks against.

use num_traits::{Float, FromPrimitive};

fn lit<T: Float + FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Parameter m of E(·|m). Validated to lie in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParam<T>(T);

impl<T: Float + FromPrimitive> EllipticParam<T> {
    pub fn new(m: T) -> Result<Self, String> {
        if m >= T::zero() && m <= T::one() {
            Ok(EllipticParam(m))
        } else {
            Err(format!(
                "elliptic parameter m must lie in [0, 1], got {}",
                m.to_f64().unwrap_or(f64::NAN)
            ))
        }
    }

    pub fn value(&self) -> T {
        self.0
    }
}

/// Duplication-loop tolerance; the series truncation error is O(errtol⁶),
/// so √ε leaves the result accurate to well below one ulp in any width.
fn duplication_errtol<T: Float + FromPrimitive>() -> T {
    T::epsilon().sqrt() * lit(10.0)
}

/// Carlson symmetric integral R_F(x, y, z), x, y, z ≥ 0 with at most one zero.
pub fn carlson_rf<T: Float + FromPrimitive>(x: T, y: T, z: T) -> T {
    let errtol: T = duplication_errtol();
    let third: T = lit(1.0 / 3.0);
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let quarter: T = lit(0.25);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lambda = sx * (sy + sz) + sy * sz;
        xt = quarter * (xt + lambda);
        yt = quarter * (yt + lambda);
        zt = quarter * (zt + lambda);
        let mu = third * (xt + yt + zt);
        let dx = (mu - xt) / mu;
        let dy = (mu - yt) / mu;
        let dz = (mu - zt) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < errtol {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            let c1: T = lit(1.0 / 24.0);
            let c2: T = lit(0.1);
            let c3: T = lit(3.0 / 44.0);
            let c4: T = lit(1.0 / 14.0);
            return (T::one() + (c1 * e2 - c2 - c3 * e3) * e2 + c4 * e3) / mu.sqrt();
        }
    }
}

/// Carlson symmetric integral R_D(x, y, z), z > 0.
pub fn carlson_rd<T: Float + FromPrimitive>(x: T, y: T, z: T) -> T {
    let errtol: T = duplication_errtol();
    let quarter: T = lit(0.25);
    let fifth: T = lit(0.2);
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut sum = T::zero();
    let mut fac = T::one();
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lambda = sx * (sy + sz) + sy * sz;
        sum = sum + fac / (sz * (zt + lambda));
        fac = quarter * fac;
        xt = quarter * (xt + lambda);
        yt = quarter * (yt + lambda);
        zt = quarter * (zt + lambda);
        let mu = fifth * (xt + yt + lit::<T>(3.0) * zt);
        let dx = (mu - xt) / mu;
        let dy = (mu - yt) / mu;
        let dz = (mu - zt) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < errtol {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - lit::<T>(6.0) * eb;
            let ee = ed + ec + ec;
            let c1: T = lit(3.0 / 14.0);
            let c2: T = lit(1.0 / 6.0);
            let c3: T = lit(9.0 / 22.0);
            let c4: T = lit(3.0 / 26.0);
            let c5: T = lit(0.25 * 9.0 / 22.0);
            let c6: T = lit(1.5 * 3.0 / 26.0);
            let series = T::one()
                + ed * (c5 * ed - c1 - c6 * dz * ee)
                + dz * (c2 * ee + dz * (dz * c4 * ea - c3 * ec));
            return lit::<T>(3.0) * sum + fac * series / (mu * mu.sqrt());
        }
    }
}

/// E(φ|m) for φ ∈ [−π/2, π/2].
fn ellip_e_reduced<T: Float + FromPrimitive>(phi: T, m: T) -> T {
    if phi == T::zero() {
        return T::zero();
    }
    if phi < T::zero() {
        return -ellip_e_reduced(-phi, m);
    }
    let s = phi.sin();
    // m = 1 has the closed form E(φ|1) = sin φ; R_D degenerates there.
    if (T::one() - m).abs() < T::epsilon() {
        return s;
    }
    let c = phi.cos();
    let q = T::one() - m * s * s;
    s * carlson_rf(c * c, q, T::one()) - m * s * s * s * carlson_rd(c * c, q, T::one()) / lit(3.0)
}

/// Incomplete elliptic integral of the second kind,
/// E(φ|m) = ∫₀^φ √(1 − m sin²t) dt,
/// extended to all real φ by E(φ + π|m) = E(φ|m) + 2E(m).
pub fn ellip_e<T: Float + FromPrimitive>(phi: T, m: EllipticParam<T>) -> T {
    let m = m.value();
    let pi: T = lit(std::f64::consts::PI);
    let half_pi: T = lit(std::f64::consts::FRAC_PI_2);
    // shift by whole half-periods: φ = j·π + φ₀, φ₀ ∈ [−π/2, π/2]
    let j = ((phi + half_pi) / pi).floor();
    let phi0 = phi - j * pi;
    let complete = ellip_e_reduced(half_pi, m);
    let two: T = lit(2.0);
    two * j * complete + ellip_e_reduced(phi0, m)
}

/// Complete elliptic integral of the second kind, E(m) = E(π/2|m).
pub fn ellip_e_complete<T: Float + FromPrimitive>(m: EllipticParam<T>) -> T {
    ellip_e_reduced(lit(std::f64::consts::FRAC_PI_2), m.value())
}

/// Real-valued imaginary-amplitude form 𝔈(η|m) = ∫₀^η √(1 + m sinh²t) dt,
/// so that E(iη|m) = i·𝔈(η|m).
///
/// Computed through the complementary-parameter reduction
/// 𝔈(η|m) = F(ψ|1−m) − E(ψ|1−m) + tan ψ √(1 − (1−m) sin²ψ),  sinh η = tan ψ,
/// which stays inside real incomplete integrals.
pub fn ellip_e_imag<T: Float + FromPrimitive>(eta: T, m: EllipticParam<T>) -> Result<T, String> {
    if eta < T::zero() {
        return Err(format!(
            "eta must be non-negative, got {}; reflect by oddness at the call site",
            eta.to_f64().unwrap_or(f64::NAN)
        ));
    }
    if m.value() >= T::one() {
        return Err("ellip_e_imag requires m < 1".to_string());
    }
    if eta == T::zero() {
        return Ok(T::zero());
    }
    let m1 = T::one() - m.value();
    let psi = eta.sinh().atan();
    let s = psi.sin();
    let c = psi.cos();
    let q = T::one() - m1 * s * s;
    let f = s * carlson_rf(c * c, q, T::one());
    let e = ellip_e_reduced(psi, m1);
    Ok(f - e + psi.tan() * q.sqrt())
}

/// f64 instantiations used throughout the crate.
pub mod f64_impl {
    pub type Param = super::EllipticParam<f64>;

    pub fn param(m: f64) -> Result<Param, String> {
        super::EllipticParam::new(m)
    }

    pub fn e(phi: f64, m: f64) -> f64 {
        super::ellip_e(phi, super::EllipticParam::new(m).expect("m in [0,1]"))
    }

    pub fn e_imag(eta: f64, m: f64) -> f64 {
        super::ellip_e_imag(eta, super::EllipticParam::new(m).expect("m in [0,1]"))
            .expect("eta >= 0, m < 1")
    }

    pub fn e_complete(m: f64) -> f64 {
        super::ellip_e_complete(super::EllipticParam::new(m).expect("m in [0,1]"))
    }
}
