//! Cutoff behavior of the mode-sum variance: convergence under a compact
//! window spectrum, divergence without time averaging, and the tau^-4 law
//! for the linear-field case.

use qvac_core::modesum::{build_couplings, linear_field_variance, variance, ModeSet};
use qvac_core::sampling::{make_one_scale, SwitchProfile};
use qvac_core::spectral::fourier_value;

#[test]
fn compact_window_spectrum_converges_with_cutoff() {
    // stretched-exponential tail with the saddle-point beta for exp(-tau/t)
    let tail = |w: f64| (-std::f64::consts::SQRT_2 * w.abs().sqrt()).exp();
    let v = |omega_max: f64| {
        let modes = ModeSet::uniform(omega_max, omega_max as usize).unwrap();
        variance(&build_couplings(&modes, 7, tail, 1.0).unwrap())
    };
    // beta (Omega tau)^eta = 40 at Omega = 800
    let v800 = v(800.0);
    let v1600 = v(1600.0);
    assert!((v1600 / v800 - 1.0).abs() < 0.01, "{v800} {v1600}");
    // oracle value for this grid (numpy, trapezoid weights on (0, 800])
    assert!((v800 / 5.42851880e8 - 1.0).abs() < 1e-6, "{v800}");
}

#[test]
fn flat_spectrum_diverges_with_cutoff() {
    let v = |omega_max: f64| {
        let modes = ModeSet::uniform(omega_max, (4.0 * omega_max) as usize).unwrap();
        variance(&build_couplings(&modes, 7, |_| 1.0, 1.0).unwrap())
    };
    let (v1, v2, v4) = (v(10.0), v(20.0), v(40.0));
    assert!(v2 > 10.0 * v1);
    assert!(v4 > 10.0 * v2);
    assert!(v4 / v1 > 1e6, "{}", v4 / v1);
}

#[test]
fn linear_field_variance_scales_as_tau_to_minus_four() {
    let sigma = |tau: f64| {
        let sf = make_one_scale(&SwitchProfile::exp_inverse(tau).unwrap()).unwrap();
        linear_field_variance(move |w| fourier_value(&sf, w).unwrap(), tau, 3).unwrap()
    };
    let s1 = sigma(1.0);
    let s2 = sigma(2.0);
    assert!(s1 > 0.0 && s2 > 0.0);
    assert!((s2 / s1 * 16.0 - 1.0).abs() < 0.01, "ratio {}", s2 / s1);
    // reference magnitude from the oracle run
    assert!((s1 / 30.9364 - 1.0).abs() < 1e-3, "{s1}");
}

#[test]
fn linear_field_variance_self_convergence() {
    // independent fixed-resolution oracle with Richardson extrapolation
    let sf = make_one_scale(&SwitchProfile::exp_inverse(1.0).unwrap()).unwrap();
    let fhat: Vec<f64> = {
        let us: Vec<f64> = (0..=24_000).map(|k| k as f64 * 0.005).collect();
        us.iter().map(|&w| fourier_value(&sf, w).unwrap()).collect()
    };
    let sigma_at = |step: usize| {
        // composite Simpson on the precomputed grid
        let h = 0.005 * step as f64;
        let n = 24_000 / step;
        let g = |i: usize| {
            let w = (i * step) as f64 * 0.005;
            let v = fhat[i * step];
            w.powi(3) * v * v
        };
        let mut acc = g(0) + g(n);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 * g(i) } else { 2.0 * g(i) };
        }
        acc * h / 3.0
    };
    let coarse = sigma_at(2);
    let fine = sigma_at(1);
    assert!((fine / coarse - 1.0).abs() < 1e-6);
    let richardson = fine + (fine - coarse) / 15.0;
    let adaptive = linear_field_variance(|w| fourier_value(&sf, w).unwrap(), 1.0, 3).unwrap();
    assert!(
        (adaptive / richardson - 1.0).abs() < 1e-6,
        "{adaptive} {richardson}"
    );
}

#[test]
fn variance_positive_for_nonzero_window() {
    let modes = ModeSet::uniform(40.0, 80).unwrap();
    let c = build_couplings(&modes, 3, |w| (-w.abs().sqrt()).exp(), 1.0).unwrap();
    assert!(variance(&c) > 0.0);
}
