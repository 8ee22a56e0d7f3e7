//! Probability-tail parameters for averaged quadratic operators.
//!
//! The tail is P(x) ~ c0 x^b exp(-a x^c) for x >> 1. With time-only averaging
//! (the worldline regime) c = eta/p; once spatial averaging matters, beyond
//! x*, the exponent steepens to c = eta. The closed forms for a and c0 target
//! the radiation-pressure operator (p = 7); c0 additionally specializes to
//! eta = 1/2, the only case whose general-eta expression is self-consistent.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DistributionError {
    #[error("p must be an odd positive integer, got {0}")]
    BadP(u32),
    #[error("eta must lie strictly inside (0, 1), got {0}")]
    BadEta(f64),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("t0 = {t0} must be at least 2*tau = {min}")]
    DurationTooShort { t0: f64, min: f64 },
    #[error("tail formula requires x >= 10, got {0}")]
    OutsideTail(f64),
    #[error("band approximation requires a*x^(1/14) >= 5, got {0:.3}")]
    BandRegime(f64),
}

fn check_odd(p: u32) -> Result<(), DistributionError> {
    if p == 0 || p % 2 == 0 {
        return Err(DistributionError::BadP(p));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<(), DistributionError> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(DistributionError::BadEta(eta));
    }
    Ok(())
}

fn check_positive(name: &'static str, value: f64) -> Result<(), DistributionError> {
    if !(value > 0.0) {
        return Err(DistributionError::NonPositive { name, value });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// time-only averaging, valid for x below x*
    Worldline,
    /// space-and-time averaging, the regime beyond x*
    Spacetime,
}

/// Tail exponent c: eta/p on the worldline, eta once spatial averaging bites.
pub fn exponent_c(p: u32, eta: f64, regime: Regime) -> Result<f64, DistributionError> {
    check_odd(p)?;
    check_eta(eta)?;
    Ok(match regime {
        Regime::Worldline => eta / p as f64,
        Regime::Spacetime => eta,
    })
}

/// Power-law exponent b = (2 - eta)/p - (eta + 1).
pub fn exponent_b(p: u32, eta: f64) -> Result<f64, DistributionError> {
    check_odd(p)?;
    check_eta(eta)?;
    Ok((2.0 - eta) / p as f64 - (eta + 1.0))
}

/// a = 2 beta (tau / (3 pi t0))^(-eta/7); the exponent carries the literal
/// p = 7 of the radiation-pressure operator.
pub fn coeff_a(beta: f64, tau: f64, t0: f64, eta: f64) -> Result<f64, DistributionError> {
    check_positive("beta", beta)?;
    check_positive("tau", tau)?;
    check_eta(eta)?;
    if t0 < 2.0 * tau {
        return Err(DistributionError::DurationTooShort { t0, min: 2.0 * tau });
    }
    let r = tau / (3.0 * std::f64::consts::PI * t0);
    Ok(2.0 * beta * r.powf(-eta / 7.0))
}

/// c0 = 2 gamma0^2 / (pi^2 beta^8) * (tau/(3 pi t0))^(2/7), the eta = 1/2 form.
pub fn coeff_c0(gamma0: f64, beta: f64, tau: f64, t0: f64) -> Result<f64, DistributionError> {
    check_positive("gamma0", gamma0)?;
    check_positive("beta", beta)?;
    check_positive("tau", tau)?;
    if t0 < 2.0 * tau {
        return Err(DistributionError::DurationTooShort { t0, min: 2.0 * tau });
    }
    let r = tau / (3.0 * std::f64::consts::PI * t0);
    Ok(2.0 * gamma0 * gamma0 / (std::f64::consts::PI.powi(2) * beta.powi(8)) * r.powf(2.0 / 7.0))
}

/// General-eta c0 = gamma0^2 / (128 pi^2 (beta eta)^8) * (tau/(3 pi t0))^(2(4 eta - 7)/4).
///
/// Experimental: the exponent 2(4 eta - 7)/4 gives -5/2 at eta = 1/2, which
/// does not reduce to the 2/7 of the eta = 1/2 form above. Exposed for
/// sensitivity studies only; prefer `coeff_c0`.
pub fn coeff_c0_general_eta(
    gamma0: f64,
    beta: f64,
    eta: f64,
    tau: f64,
    t0: f64,
) -> Result<f64, DistributionError> {
    check_positive("gamma0", gamma0)?;
    check_positive("beta", beta)?;
    check_positive("tau", tau)?;
    check_eta(eta)?;
    if t0 < 2.0 * tau {
        return Err(DistributionError::DurationTooShort { t0, min: 2.0 * tau });
    }
    let r = tau / (3.0 * std::f64::consts::PI * t0);
    Ok(
        gamma0 * gamma0 / (128.0 * std::f64::consts::PI.powi(2) * (beta * eta).powi(8))
            * r.powf(2.0 * (4.0 * eta - 7.0) / 4.0),
    )
}

/// Crossover x* = (2/a)^(p/eta) (tau/ell)^p above which spatial averaging matters.
pub fn x_star_general(p: u32, eta: f64, a: f64, tau: f64, ell: f64) -> f64 {
    (2.0 / a).powf(p as f64 / eta) * (tau / ell).powi(p as i32)
}

/// The p = 7, eta = 1/2 closed form: x* = beta^-14 (tau/(3 pi t0)) (tau/ell)^7.
pub fn x_star_specialized(beta: f64, tau: f64, t0: f64, ell: f64) -> f64 {
    beta.powi(-14) * (tau / (3.0 * std::f64::consts::PI * t0)) * (tau / ell).powi(7)
}

/// The full parameter tuple for the p = 7, eta = 1/2 radiation-pressure tail.
#[derive(Debug, Clone, Copy)]
pub struct DistributionParams {
    pub p: u32,
    pub eta: f64,
    pub beta: f64,
    pub gamma0: f64,
    pub tau: f64,
    pub t0: f64,
    pub ell: f64,
    pub a: f64,
    /// b = -9/7 here: the band derivation (u^-5 integrand, x^-2/7 band form)
    /// fixes the sign even though the displayed asymptote reads x^{+9/7}
    pub b: f64,
    pub c: f64,
    pub c0: f64,
    pub x_star: f64,
}

impl DistributionParams {
    /// Radiation-pressure parameters: p = 7, eta = 1/2.
    pub fn eta_half(
        beta: f64,
        gamma0: f64,
        tau: f64,
        t0: f64,
        ell: f64,
    ) -> Result<Self, DistributionError> {
        check_positive("ell", ell)?;
        let p = 7;
        let eta = 0.5;
        let a = coeff_a(beta, tau, t0, eta)?;
        let c0 = coeff_c0(gamma0, beta, tau, t0)?;
        Ok(Self {
            p,
            eta,
            beta,
            gamma0,
            tau,
            t0,
            ell,
            a,
            b: exponent_b(p, eta)?,
            c: exponent_c(p, eta, Regime::Worldline)?,
            c0,
            x_star: x_star_general(p, eta, a, tau, ell),
        })
    }
}

/// Worldline tail density P(x) = c0 x^b exp(-a x^c), valid for x >= 10.
pub fn pdf_tail(x: f64, params: &DistributionParams) -> Result<f64, DistributionError> {
    if x < 10.0 {
        return Err(DistributionError::OutsideTail(x));
    }
    Ok(params.c0 * x.powf(params.b) * (-params.a * x.powf(params.c)).exp())
}

/// Even extension for symmetric operators: P(x) = P(-x), so |x| enters the tail.
pub fn pdf_tail_even(x: f64, params: &DistributionParams) -> Result<f64, DistributionError> {
    pdf_tail(x.abs(), params)
}

/// Probability of an outcome in [x/2, x]: the closed band form
/// 0.676 x P(x) = 0.676 c0 x^(-2/7) exp(-a x^(1/14)).
pub fn band_probability(x: f64, params: &DistributionParams) -> Result<f64, DistributionError> {
    if x < 10.0 {
        return Err(DistributionError::OutsideTail(x));
    }
    let au = params.a * x.powf(1.0 / 14.0);
    if au < 5.0 {
        return Err(DistributionError::BandRegime(au));
    }
    Ok(BAND_PREFACTOR * x * pdf_tail(x, params)?)
}

/// 14 * (1 - 2^(-1/14)) rounded as in the closed band form.
pub const BAND_PREFACTOR: f64 = 0.676;

/// The band-width constant 1 - 2^(-1/14) = 0.04830...
pub fn band_width_fraction() -> f64 {
    1.0 - 2f64.powf(-1.0 / 14.0)
}
