//! Finite-mode brute-force oracle for the averaged quadratic operator.
//!
//! Builds the coupling matrices A_ij ~ (w_i w_j)^(p/2-1) fhat(w_i - w_j) and
//! B_ij ~ (w_i w_j)^(p/2-1) fhat(w_i + w_j) on a discrete mode set and sums
//! the variance mu_2 = 2 sum B_ij^2. With a compact-window spectrum the sum
//! converges as the cutoff grows; with fhat = 1 it diverges, which is the
//! whole point of time averaging. Normal ordering is structural: no diagonal
//! vacuum term is ever added, so the first moment vanishes identically.

use crate::quad::{self, pairwise_sum, QuadError};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModeSumError {
    #[error("p must be an odd positive integer, got {0}")]
    BadP(u32),
    #[error("mode set must be nonempty with positive frequencies and weights")]
    BadModes,
    #[error("spectrum evaluation returned a non-finite value at omega = {omega}")]
    SpectrumEval { omega: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Discrete mode frequencies with their discretization measure.
#[derive(Debug, Clone)]
pub struct ModeSet {
    omegas: Vec<f64>,
    weights: Vec<f64>,
}

impl ModeSet {
    /// Pairs are sorted by frequency, so relabeling the input leaves every
    /// downstream sum bit-identical.
    pub fn new(mut pairs: Vec<(f64, f64)>) -> Result<Self, ModeSumError> {
        if pairs.is_empty() || pairs.iter().any(|&(w, wt)| !(w > 0.0) || !(wt > 0.0)) {
            return Err(ModeSumError::BadModes);
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            omegas: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// Uniform grid on (0, omega_max] with trapezoid weights.
    pub fn uniform(omega_max: f64, n: usize) -> Result<Self, ModeSumError> {
        if n == 0 || !(omega_max > 0.0) {
            return Err(ModeSumError::BadModes);
        }
        let h = omega_max / n as f64;
        let pairs = (1..=n)
            .map(|k| (k as f64 * h, if k == n { 0.5 * h } else { h }))
            .collect();
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Symmetric coupling matrices of the mode expansion.
#[derive(Debug, Clone)]
pub struct CouplingMatrices {
    n: usize,
    p: u32,
    prefactor: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CouplingMatrices {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn b(&self, i: usize, j: usize) -> f64 {
        self.b[i * self.n + j]
    }
}

/// Fill the weight-scaled coupling matrices from a spectrum callable.
/// The spectrum is taken even: A entries use |w_i - w_j|.
pub fn build_couplings<F>(
    modes: &ModeSet,
    p: u32,
    spectrum: F,
    prefactor: f64,
) -> Result<CouplingMatrices, ModeSumError>
where
    F: Fn(f64) -> f64 + Sync,
{
    if p == 0 || p % 2 == 0 {
        return Err(ModeSumError::BadP(p));
    }
    let n = modes.len();
    let ws = modes.omegas();
    let wts = modes.weights();
    let expo = p as f64 / 2.0 - 1.0;

    let fill = |diff: bool| -> Result<Vec<f64>, ModeSumError> {
        let mut m = vec![0.0f64; n * n];
        // upper triangle in parallel rows, mirrored afterwards
        m.par_chunks_mut(n)
            .enumerate()
            .try_for_each(|(i, row)| -> Result<(), ModeSumError> {
                for j in i..n {
                    let arg = if diff {
                        (ws[i] - ws[j]).abs()
                    } else {
                        ws[i] + ws[j]
                    };
                    let fv = spectrum(arg);
                    if !fv.is_finite() {
                        return Err(ModeSumError::SpectrumEval { omega: arg });
                    }
                    row[j] = prefactor * wts[i] * wts[j] * (ws[i] * ws[j]).powf(expo) * fv;
                }
                Ok(())
            })?;
        for i in 0..n {
            for j in 0..i {
                m[i * n + j] = m[j * n + i];
            }
        }
        Ok(m)
    };

    Ok(CouplingMatrices {
        n,
        p,
        prefactor,
        a: fill(true)?,
        b: fill(false)?,
    })
}

/// Variance mu_2 = 2 sum_ij B_ij^2 (B is real symmetric).
pub fn variance(c: &CouplingMatrices) -> f64 {
    let squares: Vec<f64> = c.b.iter().map(|&v| v * v).collect();
    2.0 * pairwise_sum(&squares)
}

/// Linear-field variance integral: int_0^inf w^power |fhat(w)|^2 dw.
/// `tau` sets the block scale of the outer quadrature; the integral is
/// truncated once consecutive blocks stop contributing.
pub fn linear_field_variance<F>(
    spectrum: F,
    tau: f64,
    spectral_power: u32,
) -> Result<f64, ModeSumError>
where
    F: Fn(f64) -> f64,
{
    if !(tau > 0.0) {
        return Err(ModeSumError::BadModes);
    }
    let g = |w: f64| {
        let v = spectrum(w);
        w.powi(spectral_power as i32) * v * v
    };
    let block = 5.0 / tau;
    let mut total = 0.0;
    let mut quiet = 0;
    for k in 0..400 {
        let lo = k as f64 * block;
        let contrib = quad::adaptive(&g, lo, lo + block, 1e-9, 1e-300)?;
        if !contrib.is_finite() {
            return Err(ModeSumError::SpectrumEval { omega: lo });
        }
        total += contrib;
        if contrib.abs() < 1e-9 * total.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(QuadError::NonConvergence {
        context: "linear-field variance tail truncation above 1e-6 relative",
    }
    .into())
}
