//! Defect-string loci: analytic predictions for the N = 1 and N = 2
//! configurations, numerical zero location in z-slices, and slice-to-slice
//! curve tracing.

use super::StringCurve;
use crate::field::{stereographic_project, wrap_angle};
use crate::solutions::{radial_profile, SolutionSpec};
use crate::{Error, Point3, Real, Result, UnitVector3};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// One analytic string line φ(z) = intercept + slope·z (mod 2π).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhiLine {
    pub l: u32,
    pub slope: Real,
    pub intercept: Real,
}

impl PhiLine {
    pub fn phi_at(&self, z: Real) -> Real {
        wrap_angle(self.intercept + self.slope * z)
    }
}

/// Strings of a single-component configuration: the constant cylinder radius
/// and the n helical lines on it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StringPrediction {
    pub rho0: Real,
    pub lines: Vec<PhiLine>,
}

/// Strings of a two-component configuration with c = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct N2Prediction {
    /// Winding carried by the axis string: min{n₁, n₂}.
    pub central_charge: u32,
    /// Satellite cylinder radius, root of R₁(ρ) = R₂(ρ).
    pub rho0: Real,
    /// n₁ − n₂ satellite lines.
    pub lines: Vec<PhiLine>,
}

/// Bracketed bisection for a continuous strictly monotone increasing `f`,
/// solving f(ρ) = target on ρ > 0.
fn bisect_increasing<F>(f: F, target: Real, hi_limit: Real) -> Result<Real>
where
    F: Fn(Real) -> Real,
{
    let mut lo = 1e-12;
    let mut hi = 1.0;
    let mut guard = 0;
    while f(hi) < target {
        hi *= 2.0;
        guard += 1;
        if hi > hi_limit || guard > 80 {
            return Err(Error::NoRoot {
                lo,
                hi,
                detail: format!("profile never reaches {target} below ρ = {hi_limit}"),
            });
        }
    }
    if f(lo) > target {
        return Err(Error::NoRoot { lo, hi, detail: format!("profile already above {target} at ρ → 0") });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Strings of the N = 1 configuration: R(ρ₀) = c₀ and
/// kz + nφ = π + 2πl, l = 0..n−1.
///
/// `profile` is the radial factor R(ρ); it must be continuous, zero at the
/// axis and strictly increasing (true for the positive branch).
pub fn predict_strings_n1<F>(n: u32, k: Real, c0: Real, profile: F) -> Result<StringPrediction>
where
    F: Fn(Real) -> Real,
{
    if n == 0 {
        return Err(Error::InvalidParameter("winding must be >= 1".into()));
    }
    if !(c0 > 0.0) {
        return Err(Error::InvalidParameter(format!("c0 must be positive, got {c0}")));
    }
    let rho0 = bisect_increasing(&profile, c0, 1e6)?;
    let nf = n as Real;
    let lines = (0..n)
        .map(|l| PhiLine { l, slope: -k / nf, intercept: (PI + TAU * l as Real) / nf })
        .collect();
    Ok(StringPrediction { rho0, lines })
}

/// Strings of the N = 2 configuration with C₁ = C₂ = 1, c = 0 and n₁ > n₂:
/// a central axis string of charge min{n₁, n₂} plus n₁ − n₂ satellites on the
/// cylinder where R₁(ρ₀) = R₂(ρ₀), along
/// (k₁−k₂)z + (n₁−n₂)φ = π + 2πl.
pub fn predict_strings_n2(n1: u32, k1: Real, n2: u32, k2: Real) -> Result<N2Prediction> {
    if n1 <= n2 || n2 == 0 {
        return Err(Error::InvalidParameter(format!("need n1 > n2 >= 1, got n1 = {n1}, n2 = {n2}")));
    }
    // R₁/R₂ → 0 at the axis (higher power of ρ) and → ∞ at large ρ
    // (larger exponential rate), so log R₁ − log R₂ is increasing through 0.
    let f = |rho: Real| {
        radial_profile(n1, k1, 1, rho).ln() - radial_profile(n2, k2, 1, rho).ln()
    };
    let rho0 = bisect_increasing(f, 0.0, 1e6)?;
    let dn = (n1 - n2) as Real;
    let dk = k1 - k2;
    let lines = (0..n1 - n2)
        .map(|l| PhiLine { l, slope: -dk / dn, intercept: (PI + TAU * l as Real) / dn })
        .collect();
    Ok(N2Prediction { central_charge: n2.min(n1), rho0, lines })
}

/// Search parameters for numerical zero location in a z-slice.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchBox {
    pub rho_max: Real,
    pub grid: (usize, usize),
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox { rho_max: 5.0, grid: (128, 128) }
    }
}

fn real_offset_of(spec: &SolutionSpec) -> Result<()> {
    let offset_im = match spec {
        SolutionSpec::CylString(s) => s.offset.im,
        SolutionSpec::MassiveCyl(_) => 0.0,
        SolutionSpec::EllipticString(_) => 0.0, // offset is real by type
        SolutionSpec::Hedgehog(s) => s.offset.im,
        SolutionSpec::Composite(c) => return real_offset_of(&c.base),
    };
    if offset_im != 0.0 {
        Err(Error::InvalidParameter(
            "string locus analysis requires a real offset c0".into(),
        ))
    } else {
        Ok(())
    }
}

/// 2D Newton refinement of a zero of (Re u, Im u) in the (x, y) plane.
fn refine_zero(spec: &SolutionSpec, x0: Real, y0: Real, z: Real) -> Option<(Real, Real)> {
    let (mut x, mut y) = (x0, y0);
    for _ in 0..60 {
        let s = spec.evaluate(&Point3::cartesian(x, y, z)).ok()?;
        if s.pole {
            return None;
        }
        let (f1, f2) = (s.value.re, s.value.im);
        let j = [s.grad[0].re, s.grad[1].re, s.grad[0].im, s.grad[1].im];
        let det = j[0] * j[3] - j[1] * j[2];
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (-f1 * j[3] + f2 * j[1]) / det;
        let dy = (-f2 * j[0] + f1 * j[2]) / det;
        x += dx;
        y += dy;
        if dx.hypot(dy) < 1e-14 * (1.0 + x.hypot(y)) {
            break;
        }
    }
    let s = spec.evaluate(&Point3::cartesian(x, y, z)).ok()?;
    let scale = 1.0 + s.grad_norm_squared().sqrt();
    if !s.pole && s.value.norm() < 1e-10 * scale {
        Some((x, y))
    } else {
        None
    }
}

/// All zeros of |u| in the z-slice, as (ρ, φ) pairs sorted by (ρ, φ).
///
/// Coarse polar grid scan for local minima of |u|², followed by 2D Newton on
/// (Re u, Im u). Requires a real offset (the analytic locus theory assumes
/// c₀ ∈ ℝ).
pub fn locate_strings(spec: &SolutionSpec, z: Real, search: &SearchBox) -> Result<Vec<(Real, Real)>> {
    real_offset_of(spec)?;
    let (n_rho, n_phi) = search.grid;
    let mut mags = vec![0.0_f64; n_rho * n_phi];
    let mut poles = vec![false; n_rho * n_phi];
    for i in 0..n_rho {
        let rho = search.rho_max * (i as Real + 0.5) / n_rho as Real;
        for j in 0..n_phi {
            let phi = TAU * j as Real / n_phi as Real;
            match spec.evaluate(&Point3::Cylindrical { rho, phi, z }) {
                Ok(s) if !s.pole => mags[i * n_phi + j] = s.value.norm_sqr(),
                _ => {
                    poles[i * n_phi + j] = true;
                    mags[i * n_phi + j] = Real::INFINITY;
                }
            }
        }
    }
    let mut zeros: Vec<(Real, Real)> = Vec::new();
    let mut push_zero = |x: Real, y: Real| {
        let rho = x.hypot(y);
        let phi = wrap_angle(y.atan2(x));
        for (r0, p0) in &zeros {
            let (x0, y0) = (r0 * p0.cos(), r0 * p0.sin());
            if (x - x0).hypot(y - y0) < 1e-6 * (1.0 + rho) {
                return;
            }
        }
        zeros.push((rho, phi));
    };
    // the axis is a grid-external candidate: N = 2 configs with c = 0 carry a
    // central string there
    if let Ok(s) = spec.evaluate(&Point3::cartesian(0.0, 0.0, z)) {
        if !s.pole && s.value.norm() < 1e-10 * (1.0 + s.grad_norm_squared().sqrt()) {
            push_zero(0.0, 0.0);
        }
    }
    for i in 0..n_rho {
        for j in 0..n_phi {
            let m = mags[i * n_phi + j];
            if !m.is_finite() {
                continue;
            }
            // local minimum over the 8-neighborhood (φ wraps, ρ clamps)
            let mut is_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= n_rho as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(n_phi as i64);
                    if mags[ii as usize * n_phi + jj as usize] < m {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if !is_min {
                continue;
            }
            let rho = search.rho_max * (i as Real + 0.5) / n_rho as Real;
            let phi = TAU * j as Real / n_phi as Real;
            if let Some((x, y)) = refine_zero(spec, rho * phi.cos(), rho * phi.sin(), z) {
                if x.hypot(y) <= search.rho_max * 1.05 {
                    push_zero(x, y);
                }
            }
        }
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).expect("finite zero coordinates"));
    Ok(zeros)
}

/// Options for [`trace_string_curves`].
#[derive(Debug, Clone, Copy)]
pub struct TraceOptions {
    pub search: SearchBox,
    /// Minimum separation of distinct zeros in one slice before a
    /// [`Error::BranchCollision`] is raised.
    pub collision_tol: Real,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { search: SearchBox::default(), collision_tol: 1e-6 }
    }
}

/// Trace all defect strings through z ∈ [z_min, z_max] by slice-to-slice
/// continuation, matching zeros by nearest planar distance.
pub fn trace_string_curves(
    spec: &SolutionSpec,
    z_min: Real,
    z_max: Real,
    step: Real,
    options: &TraceOptions,
) -> Result<Vec<StringCurve>> {
    if !(step > 0.0) || z_max <= z_min {
        return Err(Error::InvalidParameter("need z_max > z_min and step > 0".into()));
    }
    let n_steps = ((z_max - z_min) / step).round() as usize;
    let first = locate_strings(spec, z_min, &options.search)?;
    if first.is_empty() {
        return Ok(Vec::new());
    }
    // order branches by angle in the first slice
    let mut seeds: Vec<(Real, Real)> = first;
    seeds.sort_by(|a, b| (a.1, a.0).partial_cmp(&(b.1, b.0)).expect("finite"));
    let mut curves: Vec<StringCurve> = seeds
        .iter()
        .enumerate()
        .map(|(l, &(rho, phi))| StringCurve {
            branch_index: l as u32,
            points: vec![Point3::cartesian(rho * phi.cos(), rho * phi.sin(), z_min)],
            z_range: (z_min, z_max),
        })
        .collect();
    for step_idx in 1..=n_steps {
        let z = z_min + step * step_idx as Real;
        let zeros = locate_strings(spec, z, &options.search)?;
        for i in 0..zeros.len() {
            for j in 0..i {
                let (xi, yi) = (zeros[i].0 * zeros[i].1.cos(), zeros[i].0 * zeros[i].1.sin());
                let (xj, yj) = (zeros[j].0 * zeros[j].1.cos(), zeros[j].0 * zeros[j].1.sin());
                if (xi - xj).hypot(yi - yj) < options.collision_tol {
                    return Err(Error::BranchCollision { z });
                }
            }
        }
        let mut taken = vec![false; zeros.len()];
        for curve in &mut curves {
            let (px, py, _) = curve.points.last().expect("nonempty").to_cartesian();
            let mut best: Option<(usize, Real)> = None;
            for (idx, &(rho, phi)) in zeros.iter().enumerate() {
                if taken[idx] {
                    continue;
                }
                let d = (rho * phi.cos() - px).hypot(rho * phi.sin() - py);
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((idx, d));
                }
            }
            let (idx, _) = best.ok_or_else(|| Error::BranchCollision { z })?;
            taken[idx] = true;
            let (rho, phi) = zeros[idx];
            curve.points.push(Point3::cartesian(rho * phi.cos(), rho * phi.sin(), z));
        }
    }
    Ok(curves)
}

/// Far-field and on-string direction of the unit vector field: n⃗∞ from a
/// large-radius evaluation, n⃗₀ from a located string point (or the axis).
/// For the positive branch these are (0, 0, 1) and (0, 0, −1).
pub fn string_position_vector(spec: &SolutionSpec) -> Result<(UnitVector3, UnitVector3)> {
    let far = spec.evaluate(&Point3::cylindrical(50.0, 0.37, 0.0))?;
    let n_infinity = if far.pole {
        stereographic_project(None)
    } else {
        stereographic_project(Some(far.value))
    };
    let on_string = match locate_strings(spec, 0.0, &SearchBox::default()) {
        Ok(zeros) if !zeros.is_empty() => {
            let (rho, phi) = zeros[0];
            spec.evaluate(&Point3::Cylindrical { rho, phi, z: 0.0 })?.value
        }
        _ => spec.evaluate(&Point3::cartesian(0.0, 0.0, 0.0))?.value,
    };
    Ok((n_infinity, stereographic_project(Some(on_string))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::{CylComponent, CylStringSpec};
    use crate::Complex;

    fn one() -> Complex {
        Complex::new(1.0, 0.0)
    }

    fn n1_spec(n: u32, k: Real, c0: Real) -> SolutionSpec {
        SolutionSpec::CylString(
            CylStringSpec::new(
                vec![CylComponent { amplitude: one(), winding: n, wavenumber: k }],
                Complex::new(c0, 0.0),
                1,
            )
            .unwrap(),
        )
    }

    #[test]
    fn n1_prediction_fig1() {
        // n = 2, k = 1, c0 = 1: strings at φ = π/2 and 3π/2 in the z = 0 plane
        let pred = predict_strings_n1(2, 1.0, 1.0, |r| radial_profile(2, 1.0, 1, r)).unwrap();
        assert_eq!(pred.lines.len(), 2);
        assert!((pred.lines[0].phi_at(0.0) - PI / 2.0).abs() < 1e-12);
        assert!((pred.lines[1].phi_at(0.0) - 3.0 * PI / 2.0).abs() < 1e-12);
        // frozen bisection oracle for R(ρ0) = 1
        assert!((pred.rho0 - 1.3254868386983632).abs() < 1e-9);
        assert!((radial_profile(2, 1.0, 1, pred.rho0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn n1_out_of_range_offset() {
        // the planar (k = 0)-free profile is bounded only by overflow; a huge
        // c0 within bracket limits still resolves, but c0 <= 0 must fail fast
        assert!(predict_strings_n1(2, 1.0, -1.0, |r| radial_profile(2, 1.0, 1, r)).is_err());
    }

    #[test]
    fn n2_prediction_counts() {
        let p21 = predict_strings_n2(2, 2.0, 1, 1.0).unwrap();
        assert_eq!(p21.central_charge, 1);
        assert_eq!(p21.lines.len(), 1);
        assert!((p21.rho0 - 1.6765085851413309).abs() < 1e-9, "rho0 = {}", p21.rho0);

        let p31 = predict_strings_n2(3, 3.0, 1, 1.0).unwrap();
        assert_eq!(p31.central_charge, 1);
        assert_eq!(p31.lines.len(), 2);
    }

    #[test]
    fn located_zeros_match_prediction() {
        let spec = n1_spec(2, 1.0, 1.0);
        let pred = predict_strings_n1(2, 1.0, 1.0, |r| radial_profile(2, 1.0, 1, r)).unwrap();
        for z in [0.0, 1.0, 2.0] {
            let zeros = locate_strings(&spec, z, &SearchBox::default()).unwrap();
            assert_eq!(zeros.len(), 2, "z = {z}: {zeros:?}");
            for (rho, phi) in zeros {
                assert!((rho - pred.rho0).abs() < 1e-8, "radius off at z = {z}");
                let ok = pred
                    .lines
                    .iter()
                    .any(|line| {
                        let d = (phi - line.phi_at(z) + PI).rem_euclid(TAU) - PI;
                        d.abs() < 1e-8
                    });
                assert!(ok, "zero at φ = {phi} matches no predicted line at z = {z}");
            }
        }
    }

    #[test]
    fn degenerate_offset_gives_axis_string_only() {
        let spec = n1_spec(1, 1.0, 0.0);
        let zeros = locate_strings(&spec, 0.3, &SearchBox::default()).unwrap();
        assert_eq!(zeros.len(), 1);
        assert_eq!(zeros[0].0, 0.0);
    }

    #[test]
    fn n2_zeros_match_prediction() {
        let spec = SolutionSpec::CylString(
            CylStringSpec::new(
                vec![
                    CylComponent { amplitude: one(), winding: 2, wavenumber: 2.0 },
                    CylComponent { amplitude: one(), winding: 1, wavenumber: 1.0 },
                ],
                Complex::new(0.0, 0.0),
                1,
            )
            .unwrap(),
        );
        let pred = predict_strings_n2(2, 2.0, 1, 1.0).unwrap();
        let zeros = locate_strings(&spec, 0.7, &SearchBox::default()).unwrap();
        assert_eq!(zeros.len(), 2, "{zeros:?}");
        assert_eq!(zeros[0].0, 0.0, "first zero should be the axis");
        assert!((zeros[1].0 - pred.rho0).abs() < 1e-8);
        let d = (zeros[1].1 - pred.lines[0].phi_at(0.7) + PI).rem_euclid(TAU) - PI;
        assert!(d.abs() < 1e-8);
    }

    #[test]
    fn traced_curves_have_constant_radius_and_helical_slope() {
        let spec = n1_spec(2, 1.0, 1.0);
        let curves =
            trace_string_curves(&spec, 0.0, TAU, PI / 16.0, &TraceOptions::default()).unwrap();
        assert_eq!(curves.len(), 2);
        for curve in &curves {
            let radii: Vec<Real> = curve.radii().collect();
            for r in &radii {
                assert!((r - radii[0]).abs() < 1e-8);
            }
            // Δφ = −(k/n)·Δz = −π over one 2π period
            assert!((curve.total_phi_advance() + PI).abs() < 1e-6);
        }
    }

    #[test]
    fn zero_wavenumber_gives_vertical_lines() {
        let spec = n1_spec(2, 0.0, 1.0);
        let curves =
            trace_string_curves(&spec, 0.0, 2.0, 0.25, &TraceOptions::default()).unwrap();
        assert_eq!(curves.len(), 2);
        for curve in &curves {
            assert!(curve.total_phi_advance().abs() < 1e-9);
            let (x0, y0, _) = curve.points[0].to_cartesian();
            for p in &curve.points {
                let (x, y, _) = p.to_cartesian();
                assert!((x - x0).hypot(y - y0) < 1e-8);
            }
        }
    }

    #[test]
    fn position_vectors_bracket_the_sphere() {
        let (n_inf, n_str) = string_position_vector(&n1_spec(2, 1.0, 1.0)).unwrap();
        assert!((n_inf.n3 - 1.0).abs() < 1e-8);
        assert!((n_str.n3 + 1.0).abs() < 1e-8);
    }

    #[test]
    fn complex_offset_rejected() {
        let spec = SolutionSpec::CylString(
            CylStringSpec::new(
                vec![CylComponent { amplitude: one(), winding: 1, wavenumber: 1.0 }],
                Complex::new(1.0, 0.5),
                1,
            )
            .unwrap(),
        );
        assert!(locate_strings(&spec, 0.0, &SearchBox::default()).is_err());
    }
}
