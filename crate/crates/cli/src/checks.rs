//! The verification suite behind `reproduce`: every target value is checked
//! at its stated tolerance and reported pass/fail. Two checks document known
//! inconsistencies between closed-form targets and exact computation (the
//! plateau normalization constant at t0 = 50 tau, and the closed band form
//! against direct quadrature); they fail by construction and are annotated.

use std::path::Path;

use qvac_core::distribution::{
    band_probability, band_width_fraction, coeff_a, coeff_c0, exponent_b, exponent_c, pdf_tail,
    DistributionParams, Regime,
};
use qvac_core::modesum::{build_couplings, linear_field_variance, variance, ModeSet};
use qvac_core::rydberg::{
    fig4_curve, prob_at_xstar_formula, v_bar, v_recoil, v_thermal, AtomModel,
};
use qvac_core::sampling::{make_one_scale, make_two_scale, SwitchProfile};
use qvac_core::spectral::{
    envelope_peaks, fit_envelope_peaks, fourier_value, parseval_ratio, two_scale_tail_relation,
    FitOptions,
};
use serde_json::json;

use crate::config::{
    AtomSpec, Fig4Spec, FitSpec, OmegaGrid, RecoilConfig, SpectrumFitConfig, TimeGrid,
    WindowConfig, WindowKind, WindowSpec,
};
use crate::output::{write_bytes, write_json};
use crate::{commands, CliError};

/// Saddle-point value of the tail coefficient for exp(-tau/t) switching:
/// the exponent of w/t + i w t at its stationary point is -sqrt(2) sqrt(w tau),
/// so beta = sqrt(2) (with a u^(-3/4) prefactor from the Gaussian width).
pub const SADDLE_BETA: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: String,
    pub computed: f64,
    pub target: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub lines: Vec<CheckLine>,
    pub passed: bool,
}

impl CheckResult {
    fn new(id: u32, name: &'static str) -> Self {
        Self {
            id,
            name,
            lines: Vec::new(),
            passed: true,
        }
    }

    fn push(
        &mut self,
        label: impl Into<String>,
        computed: f64,
        target: impl Into<String>,
        pass: bool,
    ) {
        self.lines.push(CheckLine {
            label: label.into(),
            computed,
            target: target.into(),
            pass,
        });
        self.passed &= pass;
    }
}

fn within(computed: f64, target: f64, rel: f64) -> bool {
    (computed / target - 1.0).abs() <= rel
}

pub fn criterion_01_window_normalization() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(1, "window construction");
    let profile = SwitchProfile::exp_inverse(1.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    let f2 = make_two_scale(&profile, 50.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    let integral = f2
        .integral()
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    r.push(
        "integral of f2 at t0 = 50 tau",
        integral,
        "1 within 1e-8",
        (integral - 1.0).abs() <= 1e-8,
    );
    let c2 = f2.norm_constant();
    // fails by construction: C2 approaches 1 only logarithmically and is
    // 1.20538 at t0 = 50 tau (|C2 - 1| < 0.05 first holds near t0 = 250 tau)
    r.push(
        "C2 at t0 = 50 tau",
        c2,
        "1 within 0.05",
        (c2 - 1.0).abs() <= 0.05,
    );
    Ok(r)
}

pub fn criterion_02_spectrum_basics() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(2, "spectrum at zero frequency and Parseval");
    let profile = SwitchProfile::exp_inverse(1.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    let f1 = make_one_scale(&profile).map_err(|e| CliError::Numeric(e.to_string()))?;
    let f2 = make_two_scale(&profile, 50.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    for (name, sf) in [("f1", &f1), ("f2", &f2)] {
        let v = fourier_value(sf, 0.0).map_err(|e| CliError::Numeric(e.to_string()))?;
        r.push(
            format!("fhat_{name}(0)"),
            v,
            "1 within 1e-10",
            (v - 1.0).abs() <= 1e-10,
        );
    }
    let ratio = parseval_ratio(&f1).map_err(|e| CliError::Numeric(e.to_string()))?;
    r.push(
        "Parseval ratio for f1",
        ratio,
        "1 within 1%",
        within(ratio, 1.0, 0.01),
    );
    Ok(r)
}

pub fn criterion_03_tail_fit() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(3, "stretched-exponential tail fit");
    let profile = SwitchProfile::exp_inverse(1.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    let f1 = make_one_scale(&profile).map_err(|e| CliError::Numeric(e.to_string()))?;
    let opts = FitOptions {
        fix_eta: None,
        power_law: true,
    };
    let map_fit = |e: qvac_core::SpectralError| CliError::Fit(e.to_string());

    // eta and the beta oracle from the wide window
    let peaks_wide = envelope_peaks(&f1, 40.0, 400.0, 200).map_err(map_fit)?;
    let fit_wide = fit_envelope_peaks(&peaks_wide, 1.0, &opts).map_err(map_fit)?;
    r.push(
        "fitted eta (f1, omega tau in [40, 400])",
        fit_wide.eta,
        "0.50 within 0.05",
        (fit_wide.eta - 0.50).abs() <= 0.05,
    );
    r.push(
        "fitted beta vs saddle-point oracle sqrt(2)",
        fit_wide.beta,
        format!("{SADDLE_BETA:.6} within 5%"),
        within(fit_wide.beta, SADDLE_BETA, 0.05),
    );

    // f1 and f2 share (beta, eta) over a common window
    let peaks_f1 = envelope_peaks(&f1, 40.0, 200.0, 60).map_err(map_fit)?;
    let fit_f1 = fit_envelope_peaks(&peaks_f1, 1.0, &opts).map_err(map_fit)?;
    let f2 = make_two_scale(&profile, 50.0).map_err(|e| CliError::Numeric(e.to_string()))?;
    let peaks_f2 = envelope_peaks(&f2, 40.0, 200.0, 60).map_err(map_fit)?;
    let fit_f2 = fit_envelope_peaks(&peaks_f2, 1.0, &opts).map_err(map_fit)?;
    let d_eta = (fit_f1.eta - fit_f2.eta).abs();
    r.push("|eta(f1) - eta(f2)|", d_eta, "<= 0.05", d_eta <= 0.05);
    let d_beta = (fit_f1.beta - fit_f2.beta).abs() / fit_f1.beta.max(fit_f2.beta);
    r.push(
        "|beta(f1) - beta(f2)| / beta",
        d_beta,
        "<= 5%",
        d_beta <= 0.05,
    );

    // gamma scales as tau/t0: doubling t0 scales gamma by ~2
    let grid: Vec<f64> = (0..23).map(|k| 40.0 + 5.0 * k as f64).collect();
    let report = two_scale_tail_relation(&profile, 50.0, &grid).map_err(map_fit)?;
    r.push(
        "gamma(t0) / gamma(2 t0)",
        report.gamma_ratio,
        "2 within 10%",
        within(report.gamma_ratio, 2.0, 0.10),
    );
    r.push(
        "f2 tail vs scaled switch transform, max deviation",
        report.max_tail_deviation,
        "< 0.20",
        report.max_tail_deviation < 0.20,
    );
    Ok(r)
}

pub fn criterion_04_distribution_constants() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(4, "distribution constants");
    let err = |e: qvac_core::DistributionError| CliError::Numeric(e.to_string());
    let c7 = exponent_c(7, 0.5, Regime::Worldline).map_err(err)?;
    r.push("c at p=7, eta=1/2", c7, "exactly 1/14", c7 == 1.0 / 14.0);
    let b7 = exponent_b(7, 0.5).map_err(err)?;
    r.push("b at p=7, eta=1/2", b7, "exactly -9/7", b7 == -(9.0 / 7.0));
    let c3 = exponent_c(3, 0.5, Regime::Worldline).map_err(err)?;
    r.push("c at p=3, eta=1/2", c3, "exactly 1/6", c3 == 1.0 / 6.0);
    let params = DistributionParams::eta_half(1.3, 1.0, 1.0, 50.0, 0.1).map_err(err)?;
    let special = qvac_core::distribution::x_star_specialized(1.3, 1.0, 50.0, 0.1);
    let dev = (params.x_star / special - 1.0).abs();
    r.push(
        "general x* vs beta^-14 closed form, relative deviation",
        dev,
        "<= 1e-12",
        dev <= 1e-12,
    );
    Ok(r)
}

pub fn criterion_05_band_probability() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(5, "band probability");
    let err = |e: qvac_core::DistributionError| CliError::Numeric(e.to_string());
    let params = DistributionParams::eta_half(1.0, 1.0, 1.0, 50.0, 0.1).map_err(err)?;
    // operating point a x^(1/14) = 10
    let x = (10.0 / params.a).powi(14);
    let m = 20_000usize;
    let h = 0.5 * x / m as f64;
    let g = |i: usize| pdf_tail(0.5 * x + i as f64 * h, &params).unwrap();
    let mut acc = g(0) + g(m);
    for i in 1..m {
        acc += if i % 2 == 1 { 4.0 * g(i) } else { 2.0 * g(i) };
    }
    let direct = acc * h / 3.0;
    let band = band_probability(x, &params).map_err(err)?;
    // fails by construction: the closed form evaluates the band integrand at
    // its right endpoint; the exact integral is 1.4723x larger at this point
    r.push(
        "closed band form over direct quadrature",
        band / direct,
        "1 within 5%",
        within(band / direct, 1.0, 0.05),
    );
    let w = band_width_fraction();
    r.push(
        "band width constant 1 - 2^(-1/14)",
        w,
        "0.0483 within 1e-4",
        (w - 0.0483).abs() <= 1e-4,
    );
    Ok(r)
}

pub fn criterion_06_mode_sum() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(6, "mode-sum variance");
    let err = |e: qvac_core::ModeSumError| CliError::Numeric(e.to_string());
    let tail = |w: f64| (-SADDLE_BETA * w.abs().sqrt()).exp();
    let v = |omega_max: f64, per_unit: f64| -> Result<f64, CliError> {
        let modes = ModeSet::uniform(omega_max, (omega_max * per_unit) as usize).map_err(err)?;
        Ok(variance(
            &build_couplings(&modes, 7, tail, 1.0).map_err(err)?,
        ))
    };
    // beta (Omega tau)^eta = 40 at the base cutoff
    let v1 = v(800.0, 1.0)?;
    let v2 = v(1600.0, 1.0)?;
    r.push(
        "variance change on cutoff doubling (compact window)",
        (v2 / v1 - 1.0).abs(),
        "< 1%",
        (v2 / v1 - 1.0).abs() < 0.01,
    );
    let flat = |omega_max: f64| -> Result<f64, CliError> {
        let modes = ModeSet::uniform(omega_max, (4.0 * omega_max) as usize).map_err(err)?;
        Ok(variance(
            &build_couplings(&modes, 7, |_| 1.0, 1.0).map_err(err)?,
        ))
    };
    let (f1, f2, f4) = (flat(10.0)?, flat(20.0)?, flat(40.0)?);
    r.push(
        "flat-spectrum growth over two cutoff doublings",
        f4 / f1,
        "> 10x (per doubling)",
        f2 > 10.0 * f1 && f4 > 10.0 * f2,
    );
    let sigma = |tau: f64| -> Result<f64, CliError> {
        let sf = make_one_scale(&SwitchProfile::exp_inverse(tau).unwrap())
            .map_err(|e| CliError::Numeric(e.to_string()))?;
        linear_field_variance(move |w| fourier_value(&sf, w).unwrap_or(f64::NAN), tau, 3)
            .map_err(|e| CliError::Numeric(e.to_string()))
    };
    let ratio = sigma(1.0)? / sigma(2.0)?;
    r.push(
        "linear-field variance ratio sigma(tau)/sigma(2 tau)",
        ratio,
        "16 within 1%",
        within(ratio, 16.0, 0.01),
    );
    Ok(r)
}

pub fn criterion_07_recoil_speed() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(7, "recoil speed chain");
    let err = |e: qvac_core::RydbergError| CliError::Numeric(e.to_string());
    let atom = AtomModel::new(50, 1.0, 1e-15, 5e-14, 1.0, 1.0).map_err(err)?;
    let v = v_bar(&atom);
    r.push(
        "v_bar (beta = 1, m = 1 u), units of c",
        v.fraction_of_c,
        "2.1e-8 within 15%",
        within(v.fraction_of_c, 2.1e-8, 0.15),
    );
    r.push(
        "v_bar in m/s",
        v.meters_per_second,
        "6.3 within 15%",
        within(v.meters_per_second, 6.3, 0.15),
    );
    let soft =
        AtomModel::new(50, 1.0, 1e-15, 5e-14, 1.0 / std::f64::consts::SQRT_2, 1.0).map_err(err)?;
    let vs = v_bar(&soft);
    r.push(
        "v_bar at beta = 1/sqrt(2), m/s",
        vs.meters_per_second,
        "800 within 15%",
        within(vs.meters_per_second, 800.0, 0.15),
    );
    let mut max_dev = 0.0f64;
    for n in [30u32, 77] {
        let other = AtomModel::new(n, 1.0, 1e-15, 5e-14, 1.0, 1.0).map_err(err)?;
        max_dev = max_dev.max((v_bar(&other).fraction_of_c / v.fraction_of_c - 1.0).abs());
    }
    let stretched = AtomModel::new(50, 1.0, 4e-15, 4e-13, 1.0, 1.0).map_err(err)?;
    max_dev = max_dev.max((v_bar(&stretched).fraction_of_c / v.fraction_of_c - 1.0).abs());
    r.push(
        "v_bar dependence on n, tau, t0 (max relative deviation)",
        max_dev,
        "<= 1e-12",
        max_dev <= 1e-12,
    );
    Ok(r)
}

pub fn criterion_08_comparison_speeds() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(8, "comparison speeds");
    let err = |e: qvac_core::RydbergError| CliError::Numeric(e.to_string());
    let vt = v_thermal(1e-6, 1.0).map_err(err)?;
    r.push(
        "v_T at 1 uK, 1 u",
        vt.fraction_of_c,
        "5e-10 within 10%",
        within(vt.fraction_of_c, 5e-10, 0.10),
    );
    let vr = v_recoil(1.0, 1.0).map_err(err)?;
    r.push(
        "v_R at 1 eV, 1 u",
        vr.fraction_of_c,
        "1e-9 within 10%",
        within(vr.fraction_of_c, 1e-9, 0.10),
    );
    Ok(r)
}

pub fn criterion_09_fig4() -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(9, "crossover probability curve");
    let err = |e: qvac_core::RydbergError| CliError::Numeric(e.to_string());
    let curve = fig4_curve(1e-15, 1.0, 1.0, 20..=77).map_err(err)?;
    let monotone = curve.rows.windows(2).all(|w| w[1].prob > w[0].prob);
    r.push(
        "monotone increase over n in [20, 77] (rows kept)",
        curve.rows.len() as f64,
        "58 rows, strictly increasing",
        monotone && curve.rows.len() == 58,
    );
    let last = curve.rows.last().unwrap();
    r.push(
        "P(x*) at n = 77, tau = 1 fs",
        last.prob,
        "0.019 within 0.002",
        (last.prob - 0.019).abs() <= 0.002,
    );
    let mut max_dev = 0.0f64;
    for row in &curve.rows {
        let rounded = 6000.0 / (row.n as f64 * row.n as f64);
        max_dev = max_dev.max((row.tau_over_r0 / rounded - 1.0).abs());
    }
    r.push(
        "tau/r0 vs 6000/n^2 (max relative deviation)",
        max_dev,
        "<= 6%",
        max_dev <= 0.06,
    );
    Ok(r)
}

pub fn criterion_10_properties(scratch: &Path) -> Result<CheckResult, CliError> {
    let mut r = CheckResult::new(10, "scaling laws and determinism");
    let err = |e: qvac_core::RydbergError| CliError::Numeric(e.to_string());
    let derr = |e: qvac_core::DistributionError| CliError::Numeric(e.to_string());

    let atom = AtomModel::new(40, 1.0, 1e-15, 5e-14, 0.7, 1.1).map_err(err)?;
    let atom2 = AtomModel::new(40, 1.0, 1e-15, 5e-14, 1.4, 1.1).map_err(err)?;
    let vr = v_bar(&atom).fraction_of_c / v_bar(&atom2).fraction_of_c;
    r.push(
        "v_bar(beta)/v_bar(2 beta)",
        vr,
        "exactly 2^14",
        vr == 2f64.powi(14),
    );
    let p1 = DistributionParams::eta_half(0.7, 1.1, 1.0, 50.0, 0.1).map_err(derr)?;
    let p2 = DistributionParams::eta_half(1.4, 1.1, 1.0, 50.0, 0.1).map_err(derr)?;
    let xr = p1.x_star / p2.x_star;
    r.push(
        "x*(beta)/x*(2 beta)",
        xr,
        "exactly 2^14",
        xr == 2f64.powi(14),
    );
    let pr = prob_at_xstar_formula(0.7, 1.1, 1.7) / prob_at_xstar_formula(1.4, 1.1, 1.7);
    r.push("P(x*) beta scaling", pr, "exactly 2^4", pr == 16.0);
    let gr = prob_at_xstar_formula(0.7, 2.2, 1.7) / prob_at_xstar_formula(0.7, 1.1, 1.7);
    r.push("P(x*) gamma0 scaling", gr, "exactly 4", gr == 4.0);

    let a1 = coeff_a(1.0, 1.0, 50.0, 0.5).map_err(derr)?;
    let a2 = coeff_a(1.0, 1.0, 100.0, 0.5).map_err(derr)?;
    let adev = (a2 / a1 / 2f64.powf(1.0 / 14.0) - 1.0).abs();
    r.push(
        "a grows as t0^(1/14) (deviation on doubling)",
        adev,
        "<= 1e-12 and increasing",
        adev <= 1e-12 && a2 > a1,
    );
    let c1 = coeff_c0(1.0, 1.0, 1.0, 50.0).map_err(derr)?;
    let c2 = coeff_c0(1.0, 1.0, 1.0, 100.0).map_err(derr)?;
    let cdev = (c2 / c1 / 2f64.powf(-2.0 / 7.0) - 1.0).abs();
    r.push(
        "c0 falls as t0^(-2/7) (deviation on doubling)",
        cdev,
        "<= 1e-12 and decreasing",
        cdev <= 1e-12 && c2 < c1,
    );

    let identical = determinism_roundtrip(scratch)?;
    r.push(
        "byte-identical reruns of window/spectrum-fit/recoil",
        if identical { 1.0 } else { 0.0 },
        "identical",
        identical,
    );
    Ok(r)
}

/// Run the cheap commands twice into scratch subdirectories and compare
/// every produced file byte for byte.
fn determinism_roundtrip(scratch: &Path) -> Result<bool, CliError> {
    let window = WindowConfig {
        window: WindowSpec {
            kind: WindowKind::Johnson,
            tau: 1.0,
            t0_over_tau: None,
            johnson_a: Some(2.0),
            johnson_beta: Some(1.0),
        },
        johnson_betas: Some(vec![0.5, 1.0, 1.5]),
        grid: TimeGrid {
            t_min_over_tau: -1.0,
            t_max_over_tau: 1.0,
            points: 401,
        },
    };
    let spectrum = SpectrumFitConfig {
        window: WindowSpec {
            kind: WindowKind::ExpInverse,
            tau: 1.0,
            t0_over_tau: Some(2.0),
            johnson_a: None,
            johnson_beta: None,
        },
        grid: OmegaGrid {
            omega_tau_min: 0.5,
            omega_tau_max: 60.0,
            points: 240,
        },
        fit: FitSpec {
            window_omega_tau: (20.0, 60.0),
            fix_eta: None,
            power_law: false,
        },
    };
    let recoil = RecoilConfig {
        atom: AtomSpec {
            n: 50,
            mass_amu: 1.0,
            tau_fs: 1.0,
            t0_over_tau: 50.0,
            beta: 1.0,
            gamma0: 1.0,
            alpha0_m3: None,
            r0_m: None,
        },
        temperature_uk: Some(1.0),
        photon_energy_ev: Some(1.0),
        fig4: Some(Fig4Spec {
            n_min: 20,
            n_max: 77,
        }),
    };
    let mut dirs = Vec::new();
    for run in ["a", "b"] {
        let dir = scratch.join(format!("determinism_{run}"));
        commands::cmd_window(&window, &dir.join("window"))?;
        commands::cmd_spectrum_fit(&spectrum, &dir.join("spectrum"))?;
        commands::cmd_recoil(&recoil, &dir.join("recoil"))?;
        dirs.push(dir);
    }
    let mut identical = true;
    for sub in ["window", "spectrum", "recoil"] {
        let da = dirs[0].join(sub);
        let db = dirs[1].join(sub);
        let mut names: Vec<String> = std::fs::read_dir(&da)
            .map_err(|e| CliError::Numeric(e.to_string()))?
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        for name in names {
            let a = std::fs::read(da.join(&name)).map_err(|e| CliError::Numeric(e.to_string()))?;
            let b = std::fs::read(db.join(&name)).map_err(|e| CliError::Numeric(e.to_string()))?;
            identical &= a == b;
        }
    }
    for dir in dirs {
        let _ = std::fs::remove_dir_all(dir);
    }
    Ok(identical)
}

pub fn run_all(out: &Path) -> Result<Vec<CheckResult>, CliError> {
    Ok(vec![
        criterion_01_window_normalization()?,
        criterion_02_spectrum_basics()?,
        criterion_03_tail_fit()?,
        criterion_04_distribution_constants()?,
        criterion_05_band_probability()?,
        criterion_06_mode_sum()?,
        criterion_07_recoil_speed()?,
        criterion_08_comparison_speeds()?,
        criterion_09_fig4()?,
        criterion_10_properties(out)?,
    ])
}

/// Notes carried verbatim into every report.
pub const REPORT_NOTES: [&str; 4] = [
    "tail power: b = -9/7 is used; the displayed x^{+9/7} variant is inconsistent with the x^{-2/7} band form that follows from it",
    "the general-eta c0 normalization (exponent 2(4 eta - 7)/4) does not reduce to the eta = 1/2 form (exponent 2/7); the eta = 1/2 expression is authoritative and the general one is gated behind an experimental function",
    "C2(50 tau) = 1.20538 exactly; the 'C2 = 1' shorthand is an asymptotic statement (|C2 - 1| < 0.05 needs t0 >~ 250 tau), so that check documents the approximation error and fails",
    "the closed band form 0.676 x P(x) evaluates the band integrand at its right endpoint and sits 32% below the direct integral at a x^(1/14) = 10, so that check documents the approximation error and fails",
];

pub fn write_report(results: &[CheckResult], out: &Path) -> Result<(), CliError> {
    let mut txt = String::new();
    for c in results {
        txt.push_str(&format!(
            "criterion {:02} [{}] {}\n",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        ));
        for l in &c.lines {
            txt.push_str(&format!(
                "    [{}] {} = {:.10e} (target {})\n",
                if l.pass { "ok" } else { "XX" },
                l.label,
                l.computed,
                l.target
            ));
        }
    }
    let n_pass = results.iter().filter(|c| c.passed).count();
    txt.push_str(&format!(
        "\n{} of {} criteria passed\n\nnotes:\n",
        n_pass,
        results.len()
    ));
    for note in REPORT_NOTES {
        txt.push_str(&format!("  - {note}\n"));
    }
    write_bytes(&out.join("report.txt"), txt.as_bytes())?;

    let criteria: Vec<serde_json::Value> = results
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "lines": c.lines.iter().map(|l| json!({
                    "computed": l.computed,
                    "label": l.label,
                    "pass": l.pass,
                    "target": l.target,
                })).collect::<Vec<_>>(),
                "name": c.name,
                "passed": c.passed,
            })
        })
        .collect();
    write_json(
        out,
        "report.json",
        &json!({
            "all_passed": results.iter().all(|c| c.passed),
            "criteria": criteria,
            "notes": REPORT_NOTES,
        }),
    )
}
