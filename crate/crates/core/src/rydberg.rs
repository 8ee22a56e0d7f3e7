//! Switched-polarizability Rydberg estimates: recoil speed, comparison
//! speeds, and the probability of the crossover-scale fluctuation, with
//! natural-unit (hbar = c = 1) conversions from a fixed constants table.
//!
//! Scalings with the principal quantum number n: mean radius r0 = n^2 a0,
//! polarizability alpha0 = n^7 a0^3 (both overridable), radiative lifetime
//! ~ n^3 (advisory only, no coefficient modeled).

use crate::distribution::DistributionError;
use crate::sampling::{self, SamplingError, SwitchProfile};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RydbergError {
    #[error("principal quantum number must be at least 1")]
    BadN,
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("excited-state duration t0 = {t0} s must be at least 2*tau = {min} s")]
    DurationTooShort { t0: f64, min: f64 },
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// Fixed conversion constants; the single source of truth for every unit change.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalConstants {
    /// hbar*c in MeV*fm
    pub hbar_c_mev_fm: f64,
    /// atomic mass unit in MeV
    pub amu_mev: f64,
    /// Bohr radius in meters
    pub bohr_radius_m: f64,
    /// Boltzmann constant in eV/K
    pub boltzmann_ev_per_k: f64,
    /// speed of light in m/s
    pub c_light_m_per_s: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar_c_mev_fm: 197.327,
    amu_mev: 931.494,
    bohr_radius_m: 5.29177e-11,
    boltzmann_ev_per_k: 8.61733e-5,
    c_light_m_per_s: 2.99792e8,
};

impl PhysicalConstants {
    /// Mass in natural units (inverse meters): m c / hbar.
    pub fn mass_inverse_meters(&self, mass_amu: f64) -> f64 {
        mass_amu * self.amu_mev / (self.hbar_c_mev_fm * 1e-15)
    }

    /// Time converted to its natural-unit length c*t.
    pub fn time_to_length_m(&self, seconds: f64) -> f64 {
        self.c_light_m_per_s * seconds
    }
}

/// A speed in units of c together with its SI value; the two are tied by
/// construction, so the unit round-trip is exact.
#[derive(Debug, Clone, Copy)]
pub struct Speed {
    pub fraction_of_c: f64,
    pub meters_per_second: f64,
}

fn speed(fraction_of_c: f64) -> Speed {
    Speed {
        fraction_of_c,
        meters_per_second: fraction_of_c * CONSTANTS.c_light_m_per_s,
    }
}

/// Rydberg configuration with the pulse/plateau time scales and tail parameters.
#[derive(Debug, Clone, Copy)]
pub struct AtomModel {
    pub n: u32,
    pub mass_amu: f64,
    /// pulse rise scale, seconds
    pub tau_s: f64,
    /// excited-state duration, seconds
    pub t0_s: f64,
    pub beta: f64,
    pub gamma0: f64,
    alpha0_m3: f64,
    r0_m: f64,
}

impl AtomModel {
    pub fn new(
        n: u32,
        mass_amu: f64,
        tau_s: f64,
        t0_s: f64,
        beta: f64,
        gamma0: f64,
    ) -> Result<Self, RydbergError> {
        if n < 1 {
            return Err(RydbergError::BadN);
        }
        for (name, value) in [
            ("mass_amu", mass_amu),
            ("tau_s", tau_s),
            ("beta", beta),
            ("gamma0", gamma0),
        ] {
            if !(value > 0.0) {
                return Err(RydbergError::NonPositive { name, value });
            }
        }
        if t0_s < 2.0 * tau_s {
            return Err(RydbergError::DurationTooShort {
                t0: t0_s,
                min: 2.0 * tau_s,
            });
        }
        let a0 = CONSTANTS.bohr_radius_m;
        Ok(Self {
            n,
            mass_amu,
            tau_s,
            t0_s,
            beta,
            gamma0,
            alpha0_m3: (n as f64).powi(7) * a0.powi(3),
            r0_m: (n as f64).powi(2) * a0,
        })
    }

    pub fn with_alpha0(mut self, alpha0_m3: f64) -> Result<Self, RydbergError> {
        if !(alpha0_m3 > 0.0) {
            return Err(RydbergError::NonPositive {
                name: "alpha0_m3",
                value: alpha0_m3,
            });
        }
        self.alpha0_m3 = alpha0_m3;
        Ok(self)
    }

    pub fn with_r0(mut self, r0_m: f64) -> Result<Self, RydbergError> {
        if !(r0_m > 0.0) {
            return Err(RydbergError::NonPositive {
                name: "r0_m",
                value: r0_m,
            });
        }
        self.r0_m = r0_m;
        Ok(self)
    }

    /// Polarizability volume, m^3 (default n^7 a0^3).
    pub fn alpha0_m3(&self) -> f64 {
        self.alpha0_m3
    }

    /// Mean radius, m (default n^2 a0).
    pub fn r0_m(&self) -> f64 {
        self.r0_m
    }

    /// Pulse scale over atom radius in natural units (c tau / r0).
    pub fn tau_over_r0(&self) -> f64 {
        CONSTANTS.time_to_length_m(self.tau_s) / self.r0_m
    }

    /// Strict worldline validity: the pulse scale must cover the atom.
    pub fn worldline_valid(&self) -> bool {
        self.tau_over_r0() >= 1.0
    }

    /// Radiative lifetime grows as n^3; advisory only, no coefficient is modeled.
    pub fn radiative_lifetime_note(&self) -> String {
        format!(
            "radiative lifetime scales as n^3 (n = {}); plateau t0 must stay below it",
            self.n
        )
    }
}

/// Paper-rounded tau/r0 = 6000/n^2 for a 1 fs pulse; the exact-constants
/// value is `AtomModel::tau_over_r0`.
pub fn tau_over_r0_rounded(n: u32) -> f64 {
    6000.0 / (n as f64 * n as f64)
}

/// Squared polarizability profile alpha^2(t) = alpha0^2 t0 f2(t), m^6.
pub fn alpha_squared_profile(atom: &AtomModel, t_s: f64) -> Result<f64, RydbergError> {
    let profile = SwitchProfile::exp_inverse(atom.tau_s)?;
    let f2 = sampling::make_two_scale(&profile, atom.t0_s)?;
    Ok(atom.alpha0_m3 * atom.alpha0_m3 * atom.t0_s * f2.eval(t_s))
}

/// Radiation-pressure force for a fluctuation of size x, natural units (1/m^2):
/// F = alpha0^2 x / (6 pi tau^8).
pub fn force_bar(atom: &AtomModel, x: f64) -> Result<f64, RydbergError> {
    if !(x > 0.0) {
        return Err(RydbergError::NonPositive {
            name: "x",
            value: x,
        });
    }
    let tau = CONSTANTS.time_to_length_m(atom.tau_s);
    Ok(atom.alpha0_m3 * atom.alpha0_m3 * x / (6.0 * std::f64::consts::PI * tau.powi(8)))
}

/// Characteristic recoil speed v = alpha0^2 / (18 pi^2 m beta^14 r0^7).
/// Both tau and t0 cancel; at the default alpha0, r0 the result is n-independent.
pub fn v_bar(atom: &AtomModel) -> Speed {
    let m = CONSTANTS.mass_inverse_meters(atom.mass_amu);
    let v = atom.alpha0_m3 * atom.alpha0_m3
        / (18.0 * std::f64::consts::PI.powi(2) * m * atom.beta.powi(14) * atom.r0_m.powi(7));
    speed(v)
}

/// Root-mean-square thermal speed sqrt(3 k_B T / m).
pub fn v_thermal(temperature_k: f64, mass_amu: f64) -> Result<Speed, RydbergError> {
    for (name, value) in [("temperature_k", temperature_k), ("mass_amu", mass_amu)] {
        if !(value > 0.0) {
            return Err(RydbergError::NonPositive { name, value });
        }
    }
    let kt_ev = CONSTANTS.boltzmann_ev_per_k * temperature_k;
    let mc2_ev = mass_amu * CONSTANTS.amu_mev * 1e6;
    Ok(speed((3.0 * kt_ev / mc2_ev).sqrt()))
}

/// Photon-recoil speed E_gamma / (m c^2).
pub fn v_recoil(photon_energy_ev: f64, mass_amu: f64) -> Result<Speed, RydbergError> {
    for (name, value) in [
        ("photon_energy_ev", photon_energy_ev),
        ("mass_amu", mass_amu),
    ] {
        if !(value > 0.0) {
            return Err(RydbergError::NonPositive { name, value });
        }
    }
    Ok(speed(
        photon_energy_ev / (mass_amu * CONSTANTS.amu_mev * 1e6),
    ))
}

/// Probability of a crossover-scale fluctuation together with the validity data.
#[derive(Debug, Clone, Copy)]
pub struct ProbAtXstar {
    pub value: f64,
    pub tau_over_r0: f64,
    /// strict tau >= r0; false signals a worldline violation
    pub worldline_valid: bool,
}

/// The closed form 0.14 gamma0^2 beta^-4 (r0/tau) exp(-2 sqrt(tau/r0)).
pub fn prob_at_xstar_formula(beta: f64, gamma0: f64, tau_over_r0: f64) -> f64 {
    0.14 * gamma0 * gamma0 * beta.powi(-4) * (1.0 / tau_over_r0) * (-2.0 * tau_over_r0.sqrt()).exp()
}

pub fn prob_at_xstar(atom: &AtomModel) -> ProbAtXstar {
    let tr = atom.tau_over_r0();
    ProbAtXstar {
        value: prob_at_xstar_formula(atom.beta, atom.gamma0, tr),
        tau_over_r0: tr,
        worldline_valid: atom.worldline_valid(),
    }
}

/// Rows below this tau/r0 are dropped from the probability curve. The band
/// admits the boundary cases the rounded 6000/n^2 keeps (n = 77 at 1 fs has
/// exact tau/r0 = 0.956) while rejecting n = 78 (0.931), so the integer
/// cutoff coincides with the n <~ 77 validity edge.
pub const WORLDLINE_SLACK: f64 = 0.94;

#[derive(Debug, Clone, Copy)]
pub struct Fig4Row {
    pub n: u32,
    pub prob: f64,
    pub tau_over_r0: f64,
    /// strict tau >= r0 flag; boundary-band rows carry false here
    pub worldline_ok: bool,
}

#[derive(Debug, Clone)]
pub struct Fig4Curve {
    pub rows: Vec<Fig4Row>,
    /// n values dropped for falling below the slack band
    pub truncated: Vec<u32>,
}

/// Probability of the crossover fluctuation versus principal quantum number.
pub fn fig4_curve(
    tau_s: f64,
    beta: f64,
    gamma0: f64,
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<Fig4Curve, RydbergError> {
    for (name, value) in [("tau_s", tau_s), ("beta", beta), ("gamma0", gamma0)] {
        if !(value > 0.0) {
            return Err(RydbergError::NonPositive { name, value });
        }
    }
    if *n_range.start() < 1 {
        return Err(RydbergError::BadN);
    }
    let tau_m = CONSTANTS.time_to_length_m(tau_s);
    let mut rows = Vec::new();
    let mut truncated = Vec::new();
    for n in n_range {
        let r0 = (n as f64 * n as f64) * CONSTANTS.bohr_radius_m;
        let tr = tau_m / r0;
        if tr < WORLDLINE_SLACK {
            truncated.push(n);
            continue;
        }
        rows.push(Fig4Row {
            n,
            prob: prob_at_xstar_formula(beta, gamma0, tr),
            tau_over_r0: tr,
            worldline_ok: tr >= 1.0,
        });
    }
    Ok(Fig4Curve { rows, truncated })
}
