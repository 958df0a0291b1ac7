//! Fourier sine coefficients of `f_1(x, k) = sn_pq(2 K_pq(k) x, k)`.
//!
//! With `e_m(x) = sin(m pi x)`, the coefficients `tau_m = 2 int_0^1 f_1 e_m`
//! vanish for even `m` (midpoint symmetry), so only
//!
//! ```text
//! tau_m = 4 int_0^{1/2} f_1(x) sin(m pi x) dx,   m odd,
//! ```
//!
//! is ever computed.  Each coefficient obeys `|tau_m| <= 8 K_pq(k)/(m^2 pi^2)`,
//! which also certifies the tail beyond any cutoff: summing `1/m^2` over odd
//! `m` gives exactly `pi^2/8`, so the neglected tail is
//! `(8K/pi^2) (pi^2/8 - partial sum)` -- a closed form, not an estimate.
//! The positivity of `|tau_1| - sum_{m>=3} |tau_m|` (checked including that
//! tail bound) is what licenses Neumann inversion of the operator `T`.
//!
//! Quadrature: Gauss-Legendre panels sized like `1/(2m)` to track the
//! oscillation, with geometric end refinement because `f_1` has algebraic
//! derivative structure at `x = 0` and `x = 1/2`.

use crate::elliptic::{eval_elliptic, EllipticKind, EllipticParams};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use serde::Serialize;
use std::f64::consts::PI;

/// Depth of the geometric end refinement (panel widths shrink to
/// `base / 2^DEPTH`, far below the 1e-10 coefficient target).
const END_REFINE_DEPTH: usize = 18;

/// Panels covering `[0, 1/2]`: `max(8, m_scale)` uniform panels with the
/// first and last replaced by geometric stacks toward the endpoints.
fn panels(m_scale: usize) -> Vec<(f64, f64)> {
    let base = m_scale.max(8);
    let w = 0.5 / base as f64;
    let mut out = Vec::with_capacity(base + 2 * END_REFINE_DEPTH);
    // Stack toward 0: [0, w/2^D], then doubling widths up to [w/2, w].
    let mut lo = 0.0;
    for d in (0..END_REFINE_DEPTH).rev() {
        let hi = w / (1u64 << d) as f64;
        out.push((lo, hi));
        lo = hi;
    }
    for j in 1..base - 1 {
        out.push((j as f64 * w, (j + 1) as f64 * w));
    }
    // Stack toward 1/2, mirrored.
    let mut hi = 0.5;
    let mut stack = Vec::with_capacity(END_REFINE_DEPTH);
    for d in (0..END_REFINE_DEPTH).rev() {
        let lo = 0.5 - w / (1u64 << d) as f64;
        stack.push((lo, hi));
        hi = lo;
    }
    out.extend(stack.into_iter().rev());
    out
}

/// Quadrature nodes with weights and `f_1` values, shared across all `m`.
struct F1Grid {
    xs: Vec<f64>,
    wf: Vec<f64>, // weight * f_1(x)
}

impl F1Grid {
    fn build(params: &EllipticParams, m_scale: usize) -> Result<Self> {
        let rule = gauss_legendre(64);
        let two_k = 2.0 * params.quarter_period();
        let mut xs = Vec::new();
        let mut wf = Vec::new();
        for (a, b) in panels(m_scale) {
            let half = 0.5 * (b - a);
            let center = 0.5 * (a + b);
            for (node, weight) in rule.nodes.iter().zip(&rule.weights) {
                let x = center + half * node;
                let f1 = eval_elliptic(params, EllipticKind::Sn, two_k * x)?;
                xs.push(x);
                wf.push(weight * half * f1);
            }
        }
        Ok(F1Grid { xs, wf })
    }

    fn tau(&self, m: usize) -> f64 {
        let mp = m as f64 * PI;
        let mut sum = 0.0;
        for (x, wf) in self.xs.iter().zip(&self.wf) {
            sum += wf * (mp * x).sin();
        }
        4.0 * sum
    }
}

/// Sine coefficients `tau_1 .. tau_M` of `f_1`, with even entries pinned to
/// zero exactly and a quadrature-error estimate for the odd ones.
#[derive(Debug, Clone, Serialize)]
pub struct SineCoefficients {
    params: EllipticParams,
    values: Vec<f64>,
    quad_err: f64,
}

impl SineCoefficients {
    /// Compute all coefficients up to `m_max` on one shared grid sized for
    /// the fastest oscillation.
    pub fn compute(params: &EllipticParams, m_max: usize) -> Result<Self> {
        if m_max < 1 {
            return Err(Error::domain("coefficient cutoff must be at least 1"));
        }
        let grid = F1Grid::build(params, m_max)?;
        let mut values = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            values.push(if m.is_multiple_of(2) {
                0.0
            } else {
                grid.tau(m)
            });
        }
        // Error metadata: compare the low coefficients against the per-m
        // reference grids (different panel layout).
        let mut quad_err = 1e-13_f64;
        for m in [1usize, 3] {
            if m <= m_max {
                let reference = tau(params, m)?;
                quad_err = quad_err.max((values[m - 1] - reference).abs());
            }
        }
        Ok(SineCoefficients {
            params: *params,
            values,
            quad_err,
        })
    }

    pub fn params(&self) -> &EllipticParams {
        &self.params
    }

    /// Largest index stored.
    pub fn m_max(&self) -> usize {
        self.values.len()
    }

    /// Coefficient `tau_m` (1-based).
    pub fn tau(&self, m: usize) -> Result<f64> {
        if m == 0 || m > self.values.len() {
            return Err(Error::domain(format!(
                "coefficient index m = {m} outside 1..={}",
                self.values.len()
            )));
        }
        Ok(self.values[m - 1])
    }

    /// All stored coefficients, index 0 holding `tau_1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn quad_err(&self) -> f64 {
        self.quad_err
    }

    /// Certified Neumann margin at this cutoff (requires odd `m_max >= 3`).
    pub fn neumann_margin(&self) -> Result<NeumannMargin> {
        let m = self.m_max();
        if m < 3 || m.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "neumann margin needs an odd cutoff >= 3, got {m}"
            )));
        }
        let tau1 = self.values[0].abs();
        let mut sum_small = 0.0;
        let mut partial = 1.0; // sum of 1/m^2 over odd m <= M, starting at m=1
        let mut mm = 3;
        while mm <= m {
            sum_small += self.values[mm - 1].abs();
            partial += 1.0 / (mm as f64 * mm as f64);
            mm += 2;
        }
        let k_total = self.params.quarter_period();
        let tail_bound = 8.0 * k_total / (PI * PI) * (PI * PI / 8.0 - partial);
        Ok(NeumannMargin {
            sum_small,
            tail_bound,
            tau1,
            margin: tau1 - sum_small - tail_bound,
            m_cutoff: m,
        })
    }
}

/// Single coefficient `tau_m` on its own `m`-scaled grid (reference path).
pub fn tau(params: &EllipticParams, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("coefficient index must be positive"));
    }
    if m.is_multiple_of(2) {
        return Ok(0.0);
    }
    let grid = F1Grid::build(params, m)?;
    Ok(grid.tau(m))
}

/// The coefficient bound `8 K_pq(k) / (m^2 pi^2)` for odd `m`.
pub fn tau_bound(params: &EllipticParams, m: usize) -> Result<f64> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "the coefficient bound applies to odd m only, got {m}"
        )));
    }
    let mf = m as f64;
    Ok(8.0 * params.quarter_period() / (mf * mf * PI * PI))
}

/// Certified decomposition of `|tau_1| - sum_{m >= 3} |tau_m|`.
///
/// `sum_small` collects the computed odd coefficients `3 <= m <= M`;
/// `tail_bound` covers everything beyond `M` through the closed-form odd
/// `1/m^2` tail.  `margin > 0` certifies that the operator `T` has a
/// bounded inverse.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NeumannMargin {
    pub sum_small: f64,
    pub tail_bound: f64,
    pub tau1: f64,
    pub margin: f64,
    pub m_cutoff: usize,
}

/// Compute the Neumann margin at cutoff `m_cutoff` (odd, at least 3).
pub fn neumann_margin(params: &EllipticParams, m_cutoff: usize) -> Result<NeumannMargin> {
    if m_cutoff < 3 || m_cutoff.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "neumann margin needs an odd cutoff >= 3, got {m_cutoff}"
        )));
    }
    SineCoefficients::compute(params, m_cutoff)?.neumann_margin()
}
