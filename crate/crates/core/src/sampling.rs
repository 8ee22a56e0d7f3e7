//! Switching profiles and normalized, compactly supported sampling windows.
//!
//! Two families are built here: windows assembled from the inverse-exponential
//! switch F(t) = exp(-tau/t) (one plateau scale t0, rise scale tau), and the
//! Johnson bump exp(-beta^2 [1 - (t/tau)^2]^{1-a}) on (-tau, tau). Every
//! constructed window is normalized to unit integral and is exactly zero
//! outside its support.

use crate::quad::{self, QuadError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("tau must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("johnson exponent a must exceed 1, got {0}")]
    JohnsonExponent(f64),
    #[error("johnson beta must be positive, got {0}")]
    JohnsonBeta(f64),
    #[error("window duration t0 = {t0} must be at least 2*tau = {min}")]
    DurationTooShort { t0: f64, min: f64 },
    #[error("operation requires the {expected} profile")]
    WrongProfile { expected: &'static str },
    #[error("eta must lie strictly inside (0, 1), got {0}")]
    EtaOutOfRange(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// A parametric switching shape with rise scale `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchProfile {
    ExpInverse { tau: f64 },
    Johnson { tau: f64, a: f64, beta: f64 },
}

impl SwitchProfile {
    pub fn exp_inverse(tau: f64) -> Result<Self, SamplingError> {
        if !(tau > 0.0) {
            return Err(SamplingError::NonPositiveTau(tau));
        }
        Ok(SwitchProfile::ExpInverse { tau })
    }

    pub fn johnson(tau: f64, a: f64, beta: f64) -> Result<Self, SamplingError> {
        if !(tau > 0.0) {
            return Err(SamplingError::NonPositiveTau(tau));
        }
        if !(a > 1.0) {
            return Err(SamplingError::JohnsonExponent(a));
        }
        if !(beta > 0.0) {
            return Err(SamplingError::JohnsonBeta(beta));
        }
        Ok(SwitchProfile::Johnson { tau, a, beta })
    }

    pub fn tau(&self) -> f64 {
        match *self {
            SwitchProfile::ExpInverse { tau } | SwitchProfile::Johnson { tau, .. } => tau,
        }
    }
}

fn clamp_tiny(x: f64) -> f64 {
    // exact vanishing of all derivatives at the support edge; subnormals are noise
    if x < f64::MIN_POSITIVE {
        0.0
    } else {
        x
    }
}

/// The monotone 0 -> 1 ramp F(t) = exp(-tau/t) for t > 0, zero otherwise.
pub fn eval_switch(profile: &SwitchProfile, t: f64) -> Result<f64, SamplingError> {
    match *profile {
        SwitchProfile::ExpInverse { tau } => {
            if t <= 0.0 {
                Ok(0.0)
            } else {
                Ok(clamp_tiny((-tau / t).exp()))
            }
        }
        SwitchProfile::Johnson { .. } => Err(SamplingError::WrongProfile {
            expected: "exp-inverse",
        }),
    }
}

/// Normalized Johnson window value; equivalent to `make_one_scale(profile)?.eval(t)`.
pub fn eval_johnson(profile: &SwitchProfile, t: f64) -> Result<f64, SamplingError> {
    match *profile {
        SwitchProfile::Johnson { .. } => Ok(make_one_scale(profile)?.eval(t)),
        SwitchProfile::ExpInverse { .. } => Err(SamplingError::WrongProfile {
            expected: "johnson",
        }),
    }
}

/// Switch-on exponent nu = eta/(1-eta) of the stretched-exponential class.
pub fn switch_on_exponents(eta: f64) -> Result<f64, SamplingError> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(SamplingError::EtaOutOfRange(eta));
    }
    Ok(eta / (1.0 - eta))
}

/// A normalized window with support exactly (-t0/2, t0/2).
#[derive(Debug, Clone)]
pub struct SamplingFunction {
    profile: SwitchProfile,
    t0: f64,
    norm_constant: f64,
}

impl SamplingFunction {
    pub fn profile(&self) -> &SwitchProfile {
        &self.profile
    }

    /// Total duration; the support is the open interval (-t0/2, t0/2).
    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn tau(&self) -> f64 {
        self.profile.tau()
    }

    /// C1, C2 or the Johnson C, fixed by the unit-integral condition.
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn support(&self) -> (f64, f64) {
        (-0.5 * self.t0, 0.5 * self.t0)
    }

    /// Re-integrate the window with the reference quadrature; a normalized
    /// window returns 1 within the quadrature tolerance.
    pub fn integral(&self) -> Result<f64, SamplingError> {
        let half = 0.5 * self.t0;
        Ok(2.0 * quad::adaptive(&|t| self.eval(t), 0.0, half, 1e-12, 1e-300)?)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let half = 0.5 * self.t0;
        if t.abs() >= half {
            return 0.0;
        }
        match self.profile {
            SwitchProfile::ExpInverse { tau } => {
                let expo = tau / (t + half) + tau / (half - t);
                clamp_tiny(self.norm_constant / self.t0 * (-expo).exp())
            }
            SwitchProfile::Johnson { tau, a, beta } => {
                let s = (t / tau) * (t / tau);
                let expo = beta * beta * (1.0 - s).powf(1.0 - a);
                clamp_tiny(self.norm_constant * (-expo).exp())
            }
        }
    }
}

fn raw_integral(profile: &SwitchProfile, t0: f64) -> Result<f64, QuadError> {
    // even integrand: integrate the right half and double
    let half = 0.5 * t0;
    let raw = move |t: f64| {
        if t >= half {
            return 0.0;
        }
        match *profile {
            SwitchProfile::ExpInverse { tau } => {
                clamp_tiny((-(tau / (t + half) + tau / (half - t))).exp())
            }
            SwitchProfile::Johnson { tau, a, beta } => {
                let s = (t / tau) * (t / tau);
                clamp_tiny((-(beta * beta * (1.0 - s).powf(1.0 - a))).exp())
            }
        }
    };
    Ok(2.0 * quad::adaptive(&raw, 0.0, half, 1e-12, 1e-300)?)
}

/// Two-timescale window f2: plateau of duration t0 with switch-on/off over tau.
pub fn make_two_scale(profile: &SwitchProfile, t0: f64) -> Result<SamplingFunction, SamplingError> {
    let tau = profile.tau();
    if let SwitchProfile::Johnson { .. } = profile {
        if t0 != 2.0 * tau {
            return Err(SamplingError::WrongProfile {
                expected: "exp-inverse (johnson windows carry a single scale)",
            });
        }
    }
    if t0 < 2.0 * tau {
        return Err(SamplingError::DurationTooShort { t0, min: 2.0 * tau });
    }
    let integral = raw_integral(profile, t0)?;
    let norm_constant = match profile {
        // f = (C/t0) * raw, so C = t0 / integral(raw)
        SwitchProfile::ExpInverse { .. } => t0 / integral,
        // f = C * raw
        SwitchProfile::Johnson { .. } => 1.0 / integral,
    };
    Ok(SamplingFunction {
        profile: *profile,
        t0,
        norm_constant,
    })
}

/// Single-scale window: the degenerate t0 = 2*tau case.
pub fn make_one_scale(profile: &SwitchProfile) -> Result<SamplingFunction, SamplingError> {
    make_two_scale(profile, 2.0 * profile.tau())
}

#[cfg(test)]
mod tests {
    use super::*;

    // high-precision reference values (30-digit quadrature)
    const C1_ORACLE: f64 = 15.0278630656716;
    const C2_50_ORACLE: f64 = 1.20538184395;

    #[test]
    fn switch_examples() {
        let p = SwitchProfile::exp_inverse(1.0).unwrap();
        assert_eq!(eval_switch(&p, -1.0).unwrap(), 0.0);
        assert!((eval_switch(&p, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((eval_switch(&p, 10.0).unwrap() - (-0.1f64).exp()).abs() < 1e-15);
        // strictly increasing on t > 0, limit 1
        let mut prev = 0.0;
        for k in 1..400 {
            let v = eval_switch(&p, 0.05 * k as f64).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(eval_switch(&p, 1e9).unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn switch_rejects_johnson() {
        let p = SwitchProfile::johnson(1.0, 2.0, 1.0).unwrap();
        assert!(matches!(
            eval_switch(&p, 0.5),
            Err(SamplingError::WrongProfile { .. })
        ));
    }

    #[test]
    fn two_scale_normalization_and_constants() {
        let p = SwitchProfile::exp_inverse(1.0).unwrap();
        let f2 = make_two_scale(&p, 50.0).unwrap();
        assert_eq!(f2.eval(25.0), 0.0);
        assert_eq!(f2.eval(-25.0), 0.0);
        let norm = quad::adaptive(&|t| f2.eval(t), -25.0, 25.0, 1e-12, 1e-300).unwrap();
        assert!((norm - 1.0).abs() < 1e-8, "norm = {norm}");
        // C2(50 tau) = 1.20538..., approaching 1 only logarithmically
        assert!((f2.norm_constant() - C2_50_ORACLE).abs() < 1e-6);
        let big = make_two_scale(&p, 5000.0).unwrap();
        assert!((big.norm_constant() - 1.0).abs() < 0.01);
        // monotone approach to 1
        let mid = make_two_scale(&p, 200.0).unwrap();
        assert!(f2.norm_constant() > mid.norm_constant());
        assert!(mid.norm_constant() > big.norm_constant());
    }

    #[test]
    fn two_scale_rejects_short_duration() {
        let p = SwitchProfile::exp_inverse(1.0).unwrap();
        assert!(matches!(
            make_two_scale(&p, 1.9),
            Err(SamplingError::DurationTooShort { .. })
        ));
    }

    #[test]
    fn one_scale_contracts() {
        let p = SwitchProfile::exp_inverse(2.0).unwrap();
        let f1 = make_one_scale(&p).unwrap();
        assert_eq!(f1.t0(), 4.0);
        assert_eq!(f1.eval(2.0), 0.0);
        assert_eq!(f1.eval(-2.0), 0.0);
        let norm = quad::adaptive(&|t| f1.eval(t), -2.0, 2.0, 1e-12, 1e-300).unwrap();
        assert!((norm - 1.0).abs() < 1e-8);
        // f1(0) = (C1 / 2 tau) F(tau)^2 by definition
        let c1 = f1.norm_constant();
        let direct = c1 / 4.0 * eval_switch(&p, 2.0).unwrap() * eval_switch(&p, 2.0).unwrap();
        assert!((f1.eval(0.0) - direct).abs() <= 1e-15 * direct);
        assert!((c1 - C1_ORACLE).abs() < 1e-9 * C1_ORACLE);
    }

    #[test]
    fn johnson_window() {
        let p = SwitchProfile::johnson(1.0, 2.0, 1.0).unwrap();
        let fj = make_one_scale(&p).unwrap();
        assert_eq!(fj.eval(1.0), 0.0);
        assert_eq!(fj.eval(-1.0), 0.0);
        let norm = quad::adaptive(&|t| fj.eval(t), -1.0, 1.0, 1e-12, 1e-300).unwrap();
        assert!((norm - 1.0).abs() < 1e-8);
        // peak values from the 30-digit oracle
        assert!((fj.eval(0.0) - 0.828568839869).abs() < 1e-9);
        for t in [0.17, 0.44, 0.83, 0.999] {
            assert_eq!(fj.eval(t), fj.eval(-t));
        }
    }

    #[test]
    fn johnson_beta_orders_peak_and_switch_speed() {
        // smaller beta switches on faster (flatter plateau), so the normalized
        // peak grows with beta: 0.6277 (0.5) < 0.8286 (1.0) < 1.0576 (1.5)
        let peaks: Vec<f64> = [0.5, 1.0, 1.5]
            .iter()
            .map(|&b| {
                let p = SwitchProfile::johnson(1.0, 2.0, b).unwrap();
                make_one_scale(&p).unwrap().eval(0.0)
            })
            .collect();
        assert!((peaks[0] - 0.627748740456).abs() < 1e-9);
        assert!((peaks[2] - 1.05756241134).abs() < 1e-9);
        assert!(peaks[0] < peaks[1] && peaks[1] < peaks[2]);
        // half-rise point moves toward the support edge as beta decreases
        let half_rise = |b: f64| {
            let p = SwitchProfile::johnson(1.0, 2.0, b).unwrap();
            let f = make_one_scale(&p).unwrap();
            let target = 0.5 * f.eval(0.0);
            let (mut lo, mut hi) = (-1.0f64, 0.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f.eval(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        assert!(half_rise(0.5) < half_rise(1.0) && half_rise(1.0) < half_rise(1.5));
    }

    #[test]
    fn johnson_shares_the_nu_one_switch_class() {
        // near the edge, ln f_J(-tau+s) ~ -beta^2 tau / (2 s): same exp(-const/t)
        // class as the inverse-exponential switch, nu = 1
        let p = SwitchProfile::johnson(1.0, 2.0, 1.0).unwrap();
        let fj = make_one_scale(&p).unwrap();
        let c = fj.norm_constant();
        for s in [1e-2, 3e-3, 1e-3] {
            let scaled = s * (fj.eval(-1.0 + s) / c).ln();
            assert!((scaled + 0.5).abs() < 2.0 * s, "s={s}: {scaled}");
        }
        assert_eq!(switch_on_exponents(0.5).unwrap(), 1.0);
    }

    #[test]
    fn switch_on_exponent_examples() {
        assert!((switch_on_exponents(1.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((switch_on_exponents(2.0 / 3.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(switch_on_exponents(0.0).is_err());
        assert!(switch_on_exponents(1.0).is_err());
    }

    #[test]
    fn monotone_switch_on_region() {
        let p = SwitchProfile::exp_inverse(1.0).unwrap();
        for t0 in [20.0, 50.0] {
            let f2 = make_two_scale(&p, t0).unwrap();
            let lo = -0.5 * t0;
            let mut prev = 0.0;
            for k in 0..=500 {
                let t = lo + 5.0 * k as f64 / 500.0;
                let v = f2.eval(t);
                assert!(v >= prev, "t0={t0} t={t}");
                prev = v;
            }
        }
    }
}
