//! Sampled-function machinery for the operator `T = sum tau_m M_m`.
//!
//! Functions live on the midpoint grid `x_j = (j + 1/2)/N` of `(0, 1)` with
//! an `L^alpha` exponent attached.  The isometries are
//! `M_m g(x) = g*(m x)`, where `g*` is the successive antiperiodic
//! extension of `g` over the positive reals:
//!
//! ```text
//! g* = g on [0, 1],       g*(x) = -g*(2n - x)  for n < x <= n + 1.
//! ```
//!
//! `T` maps `e_n = sin(n pi x)` to `f_n = sn_pq(2 n K x, k)`; when the
//! Neumann margin of its coefficients is positive, `T` is inverted by the
//! fixed-point iteration `g <- (u - (T - tau_1 I) g)/tau_1`, which converges
//! geometrically with ratio `sum_{m>=3} |tau_m| / |tau_1|`.

use crate::elliptic::{eval_elliptic, EllipticKind};
use crate::error::{Error, Result};
use crate::fourier::SineCoefficients;
use crate::quad::gauss_legendre;
use serde::Serialize;
use std::f64::consts::PI;

/// Uniform midpoint samples of a real function on (0, 1) with the exponent
/// of the norm it is measured in.
#[derive(Debug, Clone, Serialize)]
pub struct GridFunction {
    samples: Vec<f64>,
    alpha: f64,
}

impl GridFunction {
    pub fn new(samples: Vec<f64>, alpha: f64) -> Result<Self> {
        let n = samples.len();
        if n < 64 || !n.is_power_of_two() {
            return Err(Error::domain(format!(
                "grid resolution must be a power of two >= 64, got {n}"
            )));
        }
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::domain(format!(
                "alpha must lie in (1, inf), got {alpha}"
            )));
        }
        Ok(GridFunction { samples, alpha })
    }

    /// Sample `f` at the midpoints.
    pub fn from_fn(n: usize, alpha: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..n).map(|j| f((j as f64 + 0.5) / n as f64)).collect();
        Self::new(samples, alpha)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Midpoint abscissa of sample `j`.
    pub fn x_at(&self, j: usize) -> f64 {
        (j as f64 + 0.5) / self.samples.len() as f64
    }

    /// Midpoint-rule `L^alpha` norm: `(sum |g_j|^alpha / N)^(1/alpha)`.
    pub fn norm(&self) -> f64 {
        let n = self.samples.len() as f64;
        let s: f64 = self.samples.iter().map(|v| v.abs().powf(self.alpha)).sum();
        (s / n).powf(1.0 / self.alpha)
    }

    /// Value at `x in [0, 1]` by linear interpolation of the midpoint
    /// samples (linear extrapolation over the half-cell at each edge).
    fn value_at(&self, x: f64) -> f64 {
        let n = self.samples.len();
        let pos = x * n as f64 - 0.5;
        if pos <= 0.0 {
            return self.samples[0] + pos * (self.samples[1] - self.samples[0]);
        }
        let last = (n - 1) as f64;
        if pos >= last {
            return self.samples[n - 1]
                + (pos - last) * (self.samples[n - 1] - self.samples[n - 2]);
        }
        let j = pos.floor() as usize;
        let frac = pos - j as f64;
        self.samples[j] + frac * (self.samples[j + 1] - self.samples[j])
    }
}

/// The antiperiodic extension `g*` evaluated at `x >= 0`.
///
/// The reflection rule folds to: on `(2j, 2j+1]` the extension repeats `g`,
/// on `(2j+1, 2j+2]` it is `-g` reflected, i.e. `g*` is 2-periodic after the
/// first two intervals, with `g*(2j) = -g(0)` at the even integers.
pub fn antiperiodic_extend(g: &GridFunction, x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::domain(format!(
            "antiperiodic extension is defined for x >= 0, got {x}"
        )));
    }
    if x <= 1.0 {
        return Ok(g.value_at(x));
    }
    let t = x % 2.0;
    if t == 0.0 {
        Ok(-g.value_at(0.0))
    } else if t <= 1.0 {
        Ok(g.value_at(t))
    } else {
        Ok(-g.value_at(2.0 - t))
    }
}

/// The isometry `M_m g(x) = g*(m x)`, resampled on the same grid.
pub fn apply_m(m: usize, g: &GridFunction) -> Result<GridFunction> {
    if m == 0 {
        return Err(Error::domain("M_m is defined for m >= 1"));
    }
    let n = g.len();
    let mf = m as f64;
    let samples = (0..n)
        .map(|j| antiperiodic_extend(g, mf * g.x_at(j)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(samples, g.alpha())
}

/// Apply the truncated operator `T g = sum_{m odd <= M} tau_m M_m g`.
pub fn apply_t(g: &GridFunction, coeffs: &SineCoefficients) -> Result<GridFunction> {
    let n = g.len();
    let mut acc = vec![0.0; n];
    for m in (1..=coeffs.m_max()).step_by(2) {
        let tau = coeffs.tau(m)?;
        if tau == 0.0 {
            continue;
        }
        let mf = m as f64;
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += tau * antiperiodic_extend(g, mf * g.x_at(j))?;
        }
    }
    GridFunction::new(acc, g.alpha())
}

/// Invert `T` by the Neumann fixed-point iteration
/// `g <- (u - (T - tau_1 I) g)/tau_1`, stopping once `||Tg - u|| <= tol`.
///
/// Refuses when the certified margin of `coeffs` is not positive, since the
/// iteration has no convergence guarantee there.
pub fn invert_t(
    u: &GridFunction,
    coeffs: &SineCoefficients,
    tol: f64,
) -> Result<(GridFunction, usize)> {
    let margin = coeffs.neumann_margin()?;
    if margin.margin <= 0.0 {
        return Err(Error::NoConvergence(format!(
            "neumann margin {} <= 0 at cutoff {}",
            margin.margin, margin.m_cutoff
        )));
    }
    let tau1 = coeffs.tau(1)?;
    let mut g = GridFunction::new(u.samples().iter().map(|v| v / tau1).collect(), u.alpha())?;
    const MAX_ITER: usize = 500;
    for iter in 1..=MAX_ITER {
        let tg = apply_t(&g, coeffs)?;
        let residual = GridFunction::new(
            tg.samples()
                .iter()
                .zip(u.samples())
                .map(|(a, b)| a - b)
                .collect(),
            u.alpha(),
        )?;
        if residual.norm() <= tol {
            return Ok((g, iter));
        }
        // g <- g - (Tg - u)/tau_1
        g = GridFunction::new(
            g.samples()
                .iter()
                .zip(residual.samples())
                .map(|(gi, ri)| gi - ri / tau1)
                .collect(),
            u.alpha(),
        )?;
    }
    Err(Error::NoConvergence(format!(
        "inversion did not reach tol {tol} within {MAX_ITER} iterations"
    )))
}

/// Expansion of `u` in the basis `f_n`: coefficients, reconstruction
/// residual, and the Neumann iteration count spent inverting `T`.
#[derive(Debug, Clone, Serialize)]
pub struct BasisExpansion {
    /// Coefficient of `f_n` at index `n - 1`.
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub neumann_iterations: usize,
}

/// Expand `u` in `{f_n}`: invert `T`, read off sine coefficients of the
/// preimage, and measure the reconstruction residual against `f_n` built
/// from the elliptic evaluator.
pub fn expand_in_basis(
    u: &GridFunction,
    coeffs: &SineCoefficients,
    n_exp: usize,
) -> Result<BasisExpansion> {
    if n_exp == 0 || n_exp > u.len() / 4 {
        return Err(Error::domain(format!(
            "expansion order must lie in 1..=N/4 = {}, got {n_exp}",
            u.len() / 4
        )));
    }
    let (preimage, neumann_iterations) = invert_t(u, coeffs, 1e-8)?;
    let n = u.len();
    // alpha_n = 2 int_0^1 (T^{-1} u)(x) sin(n pi x) dx, midpoint rule.
    let coefficients: Vec<f64> = (1..=n_exp)
        .map(|nn| {
            let mut s = 0.0;
            for (j, v) in preimage.samples().iter().enumerate() {
                s += v * (nn as f64 * PI * preimage.x_at(j)).sin();
            }
            2.0 * s / n as f64
        })
        .collect();

    let params = coeffs.params();
    let two_k = 2.0 * params.quarter_period();
    let mut recon = vec![0.0; n];
    for (nn, &a) in coefficients.iter().enumerate() {
        let freq = (nn + 1) as f64 * two_k;
        for (j, slot) in recon.iter_mut().enumerate() {
            *slot += a * eval_elliptic(params, EllipticKind::Sn, freq * u.x_at(j))?;
        }
    }
    let residual = GridFunction::new(
        u.samples().iter().zip(&recon).map(|(a, b)| a - b).collect(),
        u.alpha(),
    )?;
    Ok(BasisExpansion {
        coefficients,
        residual_norm: residual.norm(),
        neumann_iterations,
    })
}

/// `e_n` sampled on the midpoint grid.
pub fn sine_grid(n_grid: usize, alpha: f64, n: usize) -> Result<GridFunction> {
    GridFunction::from_fn(n_grid, alpha, |x| (n as f64 * PI * x).sin())
}

/// `f_n` sampled on the midpoint grid.
pub fn fn_grid(
    params: &crate::elliptic::EllipticParams,
    n_grid: usize,
    alpha: f64,
    n: usize,
) -> Result<GridFunction> {
    let two_k = 2.0 * params.quarter_period();
    let mut samples = Vec::with_capacity(n_grid);
    for j in 0..n_grid {
        let x = (j as f64 + 0.5) / n_grid as f64;
        samples.push(eval_elliptic(
            params,
            EllipticKind::Sn,
            n as f64 * two_k * x,
        )?);
    }
    GridFunction::new(samples, alpha)
}

/// Exact `L^alpha(0,1)` norm of a function given analytically, for
/// discretization-error checks in tests and the CLI.
pub fn continuum_norm(f: impl Fn(f64) -> f64, alpha: f64) -> f64 {
    let rule = gauss_legendre(64);
    let mut s = 0.0;
    for j in 0..64 {
        let a = j as f64 / 64.0;
        let b = (j + 1) as f64 / 64.0;
        s += rule.integrate(&|x: f64| f(x).abs().powf(alpha), a, b);
    }
    s.powf(1.0 / alpha)
}
