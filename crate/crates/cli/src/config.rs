//! JSON run configurations. Schemas are strict: unknown keys abort before
//! any computation.

use qvac_core::sampling::{self, SamplingFunction, SwitchProfile};
use serde::Deserialize;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    ExpInverse,
    Johnson,
}

/// A single window: inverse-exponential switch with a plateau, or a Johnson bump.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub kind: WindowKind,
    pub tau: f64,
    /// plateau length in units of tau (exp_inverse; default 2 = single scale)
    #[serde(default)]
    pub t0_over_tau: Option<f64>,
    #[serde(default)]
    pub johnson_a: Option<f64>,
    #[serde(default)]
    pub johnson_beta: Option<f64>,
}

impl WindowSpec {
    pub fn build(&self) -> Result<SamplingFunction, CliError> {
        match self.kind {
            WindowKind::ExpInverse => {
                let profile = SwitchProfile::exp_inverse(self.tau)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                let t0 = self.t0_over_tau.unwrap_or(2.0) * self.tau;
                sampling::make_two_scale(&profile, t0).map_err(|e| CliError::Config(e.to_string()))
            }
            WindowKind::Johnson => {
                let a = self
                    .johnson_a
                    .ok_or_else(|| CliError::Config("johnson_a is required".into()))?;
                let beta = self
                    .johnson_beta
                    .ok_or_else(|| CliError::Config("johnson_beta is required".into()))?;
                if self.t0_over_tau.is_some() {
                    return Err(CliError::Config(
                        "johnson windows carry a single scale; t0_over_tau is not accepted".into(),
                    ));
                }
                let profile = SwitchProfile::johnson(self.tau, a, beta)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                sampling::make_one_scale(&profile).map_err(|e| CliError::Config(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_min_over_tau: f64,
    pub t_max_over_tau: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub window: WindowSpec,
    /// multiple Johnson betas: one CSV per curve
    #[serde(default)]
    pub johnson_betas: Option<Vec<f64>>,
    pub grid: TimeGrid,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaGrid {
    pub omega_tau_min: f64,
    pub omega_tau_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSpec {
    /// [lo, hi] in omega*tau
    pub window_omega_tau: (f64, f64),
    #[serde(default)]
    pub fix_eta: Option<f64>,
    /// include the fitted power-law prefactor term (default off)
    #[serde(default)]
    pub power_law: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumFitConfig {
    pub window: WindowSpec,
    pub grid: OmegaGrid,
    pub fit: FitSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistConfig {
    pub beta: f64,
    pub gamma0: f64,
    pub tau: f64,
    pub t0_over_tau: f64,
    pub tau_over_ell: f64,
    /// evaluation points for the tail table (each must be >= 10)
    #[serde(default)]
    pub xs: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "snake_case")]
pub enum SpectrumSpec {
    /// gamma * exp(-beta |w tau|^eta)
    StretchedExp {
        gamma: f64,
        beta: f64,
        eta: f64,
        tau: f64,
    },
    /// constant (the divergent no-averaging case)
    Flat { value: f64 },
}

impl SpectrumSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        match *self {
            SpectrumSpec::StretchedExp {
                gamma,
                beta,
                eta,
                tau,
            } => {
                if !(gamma > 0.0 && beta > 0.0 && tau > 0.0 && eta > 0.0 && eta < 1.0) {
                    return Err(CliError::Config(
                        "stretched_exp spectrum requires gamma, beta, tau > 0 and 0 < eta < 1"
                            .into(),
                    ));
                }
            }
            SpectrumSpec::Flat { value } => {
                if !value.is_finite() {
                    return Err(CliError::Config(
                        "flat spectrum value must be finite".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, w: f64) -> f64 {
        match *self {
            SpectrumSpec::StretchedExp {
                gamma,
                beta,
                eta,
                tau,
            } => gamma * (-beta * (w * tau).abs().powf(eta)).exp(),
            SpectrumSpec::Flat { value } => value,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSumConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub prefactor: f64,
    pub spectrum: SpectrumSpec,
    /// variance is reported at each cutoff
    pub cutoffs: Vec<f64>,
    /// mode density: modes per unit angular frequency
    #[serde(default = "one")]
    pub modes_per_unit: f64,
    /// optional linear-field variance of a sampled window
    #[serde(default)]
    pub linear_field: Option<LinearFieldSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearFieldSpec {
    pub spectral_power: u32,
    pub window: WindowSpec,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub n: u32,
    pub mass_amu: f64,
    pub tau_fs: f64,
    pub t0_over_tau: f64,
    pub beta: f64,
    pub gamma0: f64,
    #[serde(default)]
    pub alpha0_m3: Option<f64>,
    #[serde(default)]
    pub r0_m: Option<f64>,
}

impl AtomSpec {
    pub fn build(&self) -> Result<qvac_core::AtomModel, CliError> {
        let tau_s = self.tau_fs * 1e-15;
        let mut atom = qvac_core::AtomModel::new(
            self.n,
            self.mass_amu,
            tau_s,
            self.t0_over_tau * tau_s,
            self.beta,
            self.gamma0,
        )
        .map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(a0) = self.alpha0_m3 {
            atom = atom
                .with_alpha0(a0)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        if let Some(r0) = self.r0_m {
            atom = atom
                .with_r0(r0)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(atom)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fig4Spec {
    pub n_min: u32,
    pub n_max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecoilConfig {
    pub atom: AtomSpec,
    #[serde(default)]
    pub temperature_uk: Option<f64>,
    #[serde(default)]
    pub photon_energy_ev: Option<f64>,
    #[serde(default)]
    pub fig4: Option<Fig4Spec>,
}

/// `reproduce` embeds its own defaults; an optional config must be empty.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproduceConfig {}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
