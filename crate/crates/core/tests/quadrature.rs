//! Independent direct-quadrature oracle for both incomplete elliptic
//! integral forms used by the elliptic-cylinder solution.

use eikonal_core::elliptic::f64_impl;

/// Composite Simpson rule; the integrands are analytic, so 2000 panels give
/// well below 1e-12 truncation error on the ranges tested.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

fn oracle_e(phi: f64, m: f64) -> f64 {
    simpson(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, 2000)
}

fn oracle_e_imag(eta: f64, m: f64) -> f64 {
    simpson(|t| (1.0 + m * t.sinh().powi(2)).sqrt(), 0.0, eta, 2000)
}

#[test]
fn circular_form_matches_quadrature_on_grid() {
    // 5 parameters x 10 amplitudes = 50 grid points
    for &m in &[0.05, 0.25, 0.5, 0.75, 0.95] {
        for i in 1..=10 {
            let phi = std::f64::consts::FRAC_PI_2 * i as f64 / 10.0;
            let ours = f64_impl::e(phi, m);
            let oracle = oracle_e(phi, m);
            assert!(
                (ours - oracle).abs() < 1e-10,
                "E({phi}|{m}) = {ours}, oracle {oracle}"
            );
        }
    }
}

#[test]
fn hyperbolic_form_matches_quadrature_on_grid() {
    for &m in &[0.05, 0.25, 0.5, 0.75, 0.95] {
        for i in 1..=10 {
            let eta = 2.0 * i as f64 / 10.0;
            let ours = f64_impl::e_imag(eta, m);
            let oracle = oracle_e_imag(eta, m);
            assert!(
                (ours - oracle).abs() < 1e-10,
                "E_imag({eta}|{m}) = {ours}, oracle {oracle}"
            );
        }
    }
}

#[test]
fn closed_form_values() {
    assert!((f64_impl::e(0.7, 0.0) - 0.7).abs() < 1e-12);
    assert!((f64_impl::e(std::f64::consts::FRAC_PI_2, 1.0) - 1.0).abs() < 1e-12);
    assert!(f64_impl::e(0.0, 0.63).abs() < 1e-12);
}
