//! Command implementations. Every command validates its whole configuration
//! before computing, writes data files deterministically, and leaves run
//! metadata in a separate sidecar (meta.json).

use std::path::Path;

use qvac_core::distribution::{band_probability, pdf_tail, DistributionParams};
use qvac_core::modesum::{build_couplings, linear_field_variance, variance, ModeSet};
use qvac_core::rydberg::{
    fig4_curve, prob_at_xstar, tau_over_r0_rounded, v_bar, v_recoil, v_thermal,
};
use qvac_core::spectral::{fit_tail, fourier_transform, fourier_value, FitOptions};
use qvac_core::SpectralError;
use serde_json::json;

use crate::config::*;
use crate::output::*;
use crate::{checks, CliError};

fn meta(dir: &Path, command: &str) -> Result<(), CliError> {
    write_json(
        dir,
        "meta.json",
        &json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
        }),
    )
}

fn spectral_to_cli(e: SpectralError) -> CliError {
    match e {
        SpectralError::Quadrature(q) => CliError::Numeric(q.to_string()),
        SpectralError::Sampling(s) => CliError::Numeric(s.to_string()),
        other => CliError::Fit(other.to_string()),
    }
}

pub fn cmd_window(config: &WindowConfig, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let grid = &config.grid;
    if grid.points < 2 || !(grid.t_max_over_tau > grid.t_min_over_tau) {
        return Err(CliError::Config(
            "time grid needs at least 2 points with t_min < t_max".into(),
        ));
    }
    let tau = config.window.tau;
    let betas: Vec<Option<f64>> = match &config.johnson_betas {
        Some(bs) => {
            if !matches!(config.window.kind, WindowKind::Johnson) {
                return Err(CliError::Config(
                    "johnson_betas applies only to johnson windows".into(),
                ));
            }
            if bs.is_empty() {
                return Err(CliError::Config("johnson_betas must not be empty".into()));
            }
            bs.iter().copied().map(Some).collect()
        }
        None => vec![None],
    };
    let multi = betas.len() > 1;
    for beta in betas {
        let mut spec = config.window.clone();
        if let Some(b) = beta {
            spec.johnson_beta = Some(b);
        }
        let sf = spec.build()?;
        let name = if multi {
            format!("window_beta{}.csv", beta.unwrap())
        } else {
            "window.csv".to_string()
        };
        let mut csv = CsvWriter::new(out, &name, "t_over_tau,f_times_tau");
        let step = (grid.t_max_over_tau - grid.t_min_over_tau) / (grid.points - 1) as f64;
        for k in 0..grid.points {
            let t_over_tau = grid.t_min_over_tau + k as f64 * step;
            csv.row(&[t_over_tau, sf.eval(t_over_tau * tau) * tau]);
        }
        csv.finish()?;
        write_plot_script(
            out,
            &format!("{}.plot", name.trim_end_matches(".csv")),
            &name,
            &[(2, "f(t) tau")],
            "sampling window",
        )?;
    }
    meta(out, "window")
}

pub fn cmd_spectrum_fit(config: &SpectrumFitConfig, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let g = &config.grid;
    if g.points < 2 || !(g.omega_tau_max > g.omega_tau_min) || g.omega_tau_min < 0.0 {
        return Err(CliError::Config("bad omega grid".into()));
    }
    if g.omega_tau_max < 40.0 {
        return Err(CliError::Config(
            "the grid must reach omega*tau >= 40 for a tail fit".into(),
        ));
    }
    let (flo, fhi) = config.fit.window_omega_tau;
    if !(flo < fhi) || flo < 5.0 {
        return Err(CliError::Config(
            "fit window must satisfy 5 <= lo < hi (in omega*tau)".into(),
        ));
    }
    let sf = config.window.build()?;
    let tau = sf.tau();
    let step = (g.omega_tau_max - g.omega_tau_min) / (g.points - 1) as f64;
    let omegas: Vec<f64> = (0..g.points)
        .map(|k| (g.omega_tau_min + k as f64 * step) / tau)
        .collect();
    let spec = fourier_transform(&sf, &omegas).map_err(spectral_to_cli)?;

    let mut csv = CsvWriter::new(out, "spectrum.csv", "omega_tau,fhat");
    for (w, v) in spec.omegas().iter().zip(spec.values()) {
        csv.row(&[w * tau, *v]);
    }
    csv.finish()?;
    write_plot_script(
        out,
        "spectrum.plot",
        "spectrum.csv",
        &[(2, "fhat")],
        "window transform",
    )?;

    let opts = FitOptions {
        fix_eta: config.fit.fix_eta,
        power_law: config.fit.power_law,
    };
    let fit = fit_tail(&spec, (flo / tau, fhi / tau), &opts).map_err(spectral_to_cli)?;
    write_json(
        out,
        "tailfit.json",
        &json!({
            "beta": fit.beta,
            "eta": fit.eta,
            "gamma": fit.gamma,
            "power_exponent": fit.power_exponent,
            "rms_residual": fit.rms_residual,
            "window_omega_tau": [flo, fhi],
        }),
    )?;
    meta(out, "spectrum-fit")
}

pub fn cmd_dist(config: &DistConfig, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    if !(config.tau_over_ell > 0.0) {
        return Err(CliError::Config("tau_over_ell must be positive".into()));
    }
    for &x in &config.xs {
        if x < 10.0 {
            return Err(CliError::Config(format!(
                "tail table entries must satisfy x >= 10, got {x}"
            )));
        }
    }
    let t0 = config.t0_over_tau * config.tau;
    let ell = config.tau / config.tau_over_ell;
    let params = DistributionParams::eta_half(config.beta, config.gamma0, config.tau, t0, ell)
        .map_err(|e| CliError::Config(e.to_string()))?;
    write_json(
        out,
        "dist.json",
        &json!({
            "a": params.a,
            "b": params.b,
            "c": params.c,
            "c0": params.c0,
            "eta": params.eta,
            "p": params.p,
            "x_star": params.x_star,
        }),
    )?;
    if !config.xs.is_empty() {
        let mut csv = CsvWriter::new(out, "tail.csv", "x,pdf_tail,band_probability");
        for &x in &config.xs {
            let pdf = pdf_tail(x, &params).map_err(|e| CliError::Numeric(e.to_string()))?;
            match band_probability(x, &params) {
                Ok(band) => csv.row(&[x, pdf, band]),
                // outside the band regime the column is left empty
                Err(_) => csv.row_mixed(&format!("{},{},", fmt(x), fmt(pdf)), &[]),
            }
        }
        csv.finish()?;
    }
    meta(out, "dist")
}

pub fn cmd_modesum(config: &ModeSumConfig, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    config.spectrum.validate()?;
    if config.cutoffs.is_empty() || config.cutoffs.iter().any(|&c| !(c > 0.0)) {
        return Err(CliError::Config("cutoffs must be positive".into()));
    }
    if !(config.modes_per_unit > 0.0) {
        return Err(CliError::Config("modes_per_unit must be positive".into()));
    }
    let mut variances = Vec::new();
    let mut csv = CsvWriter::new(out, "modesum.csv", "omega_max,variance");
    for &cutoff in &config.cutoffs {
        let n = (cutoff * config.modes_per_unit).ceil() as usize;
        let modes =
            ModeSet::uniform(cutoff, n.max(1)).map_err(|e| CliError::Config(e.to_string()))?;
        let c = build_couplings(
            &modes,
            config.p,
            |w| config.spectrum.eval(w),
            config.prefactor,
        )
        .map_err(|e| match e {
            qvac_core::ModeSumError::BadP(_) | qvac_core::ModeSumError::BadModes => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numeric(other.to_string()),
        })?;
        let v = variance(&c);
        variances.push(v);
        csv.row(&[cutoff, v]);
    }
    csv.finish()?;
    let ratios: Vec<f64> = variances.windows(2).map(|w| w[1] / w[0]).collect();
    let sigma = match &config.linear_field {
        Some(lf) => {
            let sf = lf.window.build()?;
            let tau = sf.tau();
            let s = linear_field_variance(
                |w| fourier_value(&sf, w).unwrap_or(f64::NAN),
                tau,
                lf.spectral_power,
            )
            .map_err(|e| CliError::Numeric(e.to_string()))?;
            Some(s)
        }
        None => None,
    };
    write_json(
        out,
        "modesum.json",
        &json!({
            "cutoff_ratios": ratios,
            "cutoffs": config.cutoffs,
            "linear_field_sigma": sigma,
            "p": config.p,
            "variances": variances,
        }),
    )?;
    meta(out, "modesum")
}

pub fn cmd_recoil(config: &RecoilConfig, out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    let atom = config.atom.build()?;
    let v = v_bar(&atom);
    let p = prob_at_xstar(&atom);
    let vt = config
        .temperature_uk
        .map(|t| v_thermal(t * 1e-6, atom.mass_amu))
        .transpose()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let vr = config
        .photon_energy_ev
        .map(|e| v_recoil(e, atom.mass_amu))
        .transpose()
        .map_err(|e| CliError::Config(e.to_string()))?;
    write_json(
        out,
        "recoil.json",
        &json!({
            "lifetime_note": atom.radiative_lifetime_note(),
            "prob_at_x_star": {
                "tau_over_r0": p.tau_over_r0,
                "value": p.value,
                "worldline_valid": p.worldline_valid,
            },
            "tau_over_r0_rounded": tau_over_r0_rounded(atom.n),
            "v_bar": { "fraction_of_c": v.fraction_of_c, "m_per_s": v.meters_per_second },
            "v_recoil": vr.map(|s| json!({ "fraction_of_c": s.fraction_of_c, "m_per_s": s.meters_per_second })),
            "v_thermal": vt.map(|s| json!({ "fraction_of_c": s.fraction_of_c, "m_per_s": s.meters_per_second })),
        }),
    )?;
    if let Some(f) = &config.fig4 {
        if f.n_min < 1 || f.n_max < f.n_min {
            return Err(CliError::Config(
                "fig4 range needs 1 <= n_min <= n_max".into(),
            ));
        }
        let curve = fig4_curve(atom.tau_s, atom.beta, atom.gamma0, f.n_min..=f.n_max)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let mut csv = CsvWriter::new(out, "fig4.csv", "n,prob_x_star,tau_over_r0");
        for row in &curve.rows {
            csv.row(&[row.n as f64, row.prob, row.tau_over_r0]);
        }
        csv.finish()?;
        write_plot_script(
            out,
            "fig4.plot",
            "fig4.csv",
            &[(2, "P(x*)")],
            "crossover fluctuation probability vs n",
        )?;
    }
    meta(out, "recoil")
}

pub fn cmd_reproduce(out: &Path) -> Result<bool, CliError> {
    ensure_dir(out)?;
    let results = checks::run_all(out)?;
    let all_passed = results.iter().all(|c| c.passed);
    checks::write_report(&results, out)?;
    emit_figures(out)?;
    meta(out, "reproduce")?;
    Ok(all_passed)
}

fn emit_figures(out: &Path) -> Result<(), CliError> {
    // two-timescale window, t0 = 50 tau
    let f2 = WindowSpec {
        kind: WindowKind::ExpInverse,
        tau: 1.0,
        t0_over_tau: Some(50.0),
        johnson_a: None,
        johnson_beta: None,
    }
    .build()?;
    let mut fig1 = CsvWriter::new(out, "fig1.csv", "t_over_tau,f_times_tau");
    for k in 0..=1080 {
        let t = -27.0 + k as f64 * 0.05;
        fig1.row(&[t, f2.eval(t)]);
    }
    fig1.finish()?;
    write_plot_script(
        out,
        "fig1.plot",
        "fig1.csv",
        &[(2, "f2(t) tau")],
        "two-timescale window",
    )?;

    // switch-on detail
    let mut fig2 = CsvWriter::new(out, "fig2.csv", "t_over_tau,f_times_tau");
    for k in 0..=1100 {
        let t = -25.5 + k as f64 * 0.005;
        fig2.row(&[t, f2.eval(t)]);
    }
    fig2.finish()?;
    write_plot_script(
        out,
        "fig2.plot",
        "fig2.csv",
        &[(2, "f2(t) tau")],
        "switch-on detail",
    )?;

    // johnson windows, a = 2, three betas
    let betas = [0.5, 1.0, 1.5];
    let windows: Vec<_> = betas
        .iter()
        .map(|&b| {
            WindowSpec {
                kind: WindowKind::Johnson,
                tau: 1.0,
                t0_over_tau: None,
                johnson_a: Some(2.0),
                johnson_beta: Some(b),
            }
            .build()
        })
        .collect::<Result<_, _>>()?;
    let mut fig3 = CsvWriter::new(out, "fig3.csv", "t_over_tau,f_beta_0.5,f_beta_1,f_beta_1.5");
    for k in 0..=1000 {
        let t = -1.0 + k as f64 * 0.002;
        let vals: Vec<f64> = windows.iter().map(|w| w.eval(t)).collect();
        fig3.row(&[t, vals[0], vals[1], vals[2]]);
    }
    fig3.finish()?;
    write_plot_script(
        out,
        "fig3.plot",
        "fig3.csv",
        &[(2, "beta = 0.5"), (3, "beta = 1"), (4, "beta = 1.5")],
        "johnson windows",
    )?;

    // crossover probability vs n at tau = 1 fs
    let curve =
        fig4_curve(1e-15, 1.0, 1.0, 20..=77).map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut fig4 = CsvWriter::new(out, "fig4.csv", "n,prob_x_star,tau_over_r0");
    for row in &curve.rows {
        fig4.row(&[row.n as f64, row.prob, row.tau_over_r0]);
    }
    fig4.finish()?;
    write_plot_script(
        out,
        "fig4.plot",
        "fig4.csv",
        &[(2, "P(x*)")],
        "crossover fluctuation probability vs n",
    )
}
