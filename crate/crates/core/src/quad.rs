//! Quadrature kernels shared by the sampling/spectral/modesum modules.
//!
//! Panel sums use fixed-order Gauss-Legendre rules with pairwise (tree)
//! reduction so results do not depend on evaluation order or thread count.

use rayon::prelude::*;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: {context}")]
    NonConvergence { context: &'static str },
}

/// Gauss-Legendre rule on [-1, 1].
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    fn new(n: usize) -> Self {
        // Newton iteration on P_n with the Chebyshev-like initial guess.
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub(crate) fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }
}

pub(crate) fn gl16() -> &'static GaussLegendre {
    static GL: OnceLock<GaussLegendre> = OnceLock::new();
    GL.get_or_init(|| GaussLegendre::new(16))
}

/// Sum with a fixed pairwise tree so the result is independent of chunking.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Composite fixed-order panel sum over `n` uniform panels.
pub(crate) fn composite<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    composite_l1(f, a, b, n).0
}

/// Panel sum together with the L1 mass sum |panel_k|, which sets the
/// rounding-noise floor of the result.
pub(crate) fn composite_l1<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    a: f64,
    b: f64,
    n: usize,
) -> (f64, f64) {
    let gl = gl16();
    let h = (b - a) / n as f64;
    let panel = |k: usize| {
        let lo = a + k as f64 * h;
        let hi = a + (k + 1) as f64 * h;
        gl.integrate(f, lo, hi)
    };
    let partials: Vec<f64> = if n >= 256 {
        (0..n).into_par_iter().map(panel).collect()
    } else {
        (0..n).map(panel).collect()
    };
    let abs: Vec<f64> = partials.iter().map(|p| p.abs()).collect();
    (pairwise_sum(&partials), pairwise_sum(&abs))
}

/// Adaptive bisection with a GL16 whole-vs-halves error estimate.
///
/// Deep in the tails the integrand itself carries relative rounding noise
/// (cancellation inside its exponent), so a pure relative test stalls there.
/// Panels are therefore also accepted below an absolute floor scaled to a
/// coarse global magnitude estimate; such panels contribute nothing at the
/// requested tolerance.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rtol: f64,
    atol: f64,
) -> Result<f64, QuadError> {
    let gl = gl16();
    let n = 64;
    let h = (b - a) / n as f64;
    let mut scale = 0.0;
    for k in 0..n {
        scale += gl
            .integrate(f, a + k as f64 * h, a + (k + 1) as f64 * h)
            .abs();
    }
    let atol = atol.max(1e-3 * rtol * scale);
    let whole = gl.integrate(f, a, b);
    adaptive_rec(f, a, b, whole, rtol, atol, 48)
}

fn adaptive_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    rtol: f64,
    atol: f64,
    depth: u32,
) -> Result<f64, QuadError> {
    let gl = gl16();
    let m = 0.5 * (a + b);
    let left = gl.integrate(f, a, m);
    let right = gl.integrate(f, m, b);
    let sum = left + right;
    if (sum - whole).abs() <= (rtol * sum.abs()).max(atol) {
        return Ok(sum);
    }
    if depth == 0 {
        return Err(QuadError::NonConvergence {
            context: "adaptive bisection depth exhausted",
        });
    }
    Ok(adaptive_rec(f, a, m, left, rtol, atol, depth - 1)?
        + adaptive_rec(f, m, b, right, rtol, atol, depth - 1)?)
}

pub(crate) enum Trig {
    Cos,
    Sin,
}

/// Oscillation-resolved transform: panels no wider than half a period pi/omega,
/// GL16 per panel, refined by doubling until the relative tolerance is met.
#[allow(clippy::too_many_arguments)]
pub(crate) fn oscillatory<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    a: f64,
    b: f64,
    omega: f64,
    trig: Trig,
    min_panels: usize,
    rtol: f64,
    atol: f64,
) -> Result<f64, QuadError> {
    let w = omega.abs();
    let g = |t: f64| {
        let v = f(t);
        match trig {
            Trig::Cos => v * (w * t).cos(),
            Trig::Sin => v * (w * t).sin(),
        }
    };
    let osc = ((b - a) * w / std::f64::consts::PI).ceil() as usize;
    let mut n = osc.max(min_panels).max(16);
    let mut prev = composite(&g, a, b, n);
    for _ in 0..10 {
        n *= 2;
        let (next, l1) = composite_l1(&g, a, b, n);
        // the cancellation in the panel sum bounds reachable absolute accuracy
        let floor = 64.0 * f64::EPSILON * l1;
        if (next - prev).abs() <= (rtol * next.abs()).max(atol.max(floor)) {
            return Ok(next);
        }
        prev = next;
    }
    Err(QuadError::NonConvergence {
        context: "oscillatory panel refinement exceeded the depth bound",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl16_exact_for_low_degree() {
        // degree-31 polynomials are exact for 16 nodes
        let f = |x: f64| x.powi(8) - 3.0 * x.powi(3) + 1.0;
        let got = gl16().integrate(&f, -1.0, 2.0);
        let exact = (2f64.powi(9) + 1.0) / 9.0 - 3.0 * (16.0 - 1.0) / 4.0 + 3.0;
        assert!((got - exact).abs() < 1e-12, "{got} vs {exact}");
    }

    #[test]
    fn adaptive_handles_edge_flat_integrand() {
        let f = |t: f64| if t <= 0.0 { 0.0 } else { (-1.0 / t).exp() };
        let got = adaptive(&f, 0.0, 1.0, 1e-12, 1e-300).unwrap();
        // int_0^1 exp(-1/t) dt = e^{-1} - E_1(1)
        assert!((got - 0.14849550677592205).abs() < 1e-12, "{got}");
    }

    #[test]
    fn oscillatory_matches_closed_form() {
        // int_0^1 cos(w t) dt = sin(w)/w
        let one = |_: f64| 1.0;
        for w in [3.0, 57.0, 301.5] {
            let got = oscillatory(&one, 0.0, 1.0, w, Trig::Cos, 16, 1e-12, 1e-15).unwrap();
            assert!((got - w.sin() / w).abs() < 1e-13, "w={w}");
        }
    }

    #[test]
    fn pairwise_sum_matches_naive_on_smooth_data() {
        let xs: Vec<f64> = (0..1000).map(|k| ((k * k) % 37) as f64 * 0.1).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }
}
