//! Numerical integration kernels.
//!
//! Two rules cover everything in this crate:
//!
//! * **tanh-sinh (double-exponential)** for integrands with algebraic
//!   endpoint singularities such as `(1 - t^q)^(-1/p)`.  The change of
//!   variable `x = tanh(pi/2 * sinh(t))` pushes the endpoints to infinity,
//!   so trapezoidal sums converge double-exponentially even when the
//!   integrand blows up at `a` or `b`.
//! * **Gauss-Legendre panels** for smooth integrands, with an adaptive
//!   split-and-compare driver for certified tolerances.
//!
//! Integrands passed to [`tanh_sinh`] receive `(x, x - a, b - x)` so they
//! can form quantities like `1 - t` near the endpoints without cancellation.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    /// Estimated value of the integral.
    pub value: f64,
    /// Estimated absolute error (difference of the last two refinements).
    pub error: f64,
    /// Number of refinement levels (or panel splits) actually used.
    pub levels: usize,
}

/// Hard cap on stored tanh-sinh levels. Level `l` holds ~`6.6 * 2^l` nodes,
/// so 13 levels keep the tables near 100k nodes total.
pub const MAX_DE_LEVEL: usize = 13;

/// One refinement level of the tanh-sinh rule on (-1, 1).
///
/// Only the `t > 0` half is stored (the rule is symmetric); each node keeps
/// `1 - x` rather than `x` so callers can resolve endpoint distances exactly.
struct DeLevel {
    one_minus_x: Vec<f64>,
    weight: Vec<f64>,
}

fn de_node(t: f64) -> (f64, f64) {
    // x = tanh(u), u = pi/2 sinh t; stored as 1 - x = 2 e^{-2u} / (1 + e^{-2u}).
    let u = 0.5 * PI * t.sinh();
    let ex = (-2.0 * u).exp();
    let one_minus_x = 2.0 * ex / (1.0 + ex);
    let weight = 0.5 * PI * t.cosh() * 4.0 * ex / ((1.0 + ex) * (1.0 + ex));
    (one_minus_x, weight)
}

fn de_levels() -> &'static Vec<DeLevel> {
    static LEVELS: OnceLock<Vec<DeLevel>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        const T_MAX: f64 = 6.6;
        let mut levels = Vec::with_capacity(MAX_DE_LEVEL + 1);
        for level in 0..=MAX_DE_LEVEL {
            let h = 0.5_f64.powi(level as i32);
            let mut one_minus_x = Vec::new();
            let mut weight = Vec::new();
            // Level 0 takes every integer multiple of h = 1 (t > 0); deeper
            // levels add only the new midpoints t = (2j+1) h.
            let mut j = 0usize;
            loop {
                let t = if level == 0 {
                    (j + 1) as f64
                } else {
                    (2 * j + 1) as f64 * h
                };
                if t > T_MAX {
                    break;
                }
                let (omx, w) = de_node(t);
                if omx < 1e-280 || w < 1e-280 {
                    break;
                }
                one_minus_x.push(omx);
                weight.push(w);
                j += 1;
            }
            levels.push(DeLevel {
                one_minus_x,
                weight,
            });
        }
        levels
    })
}

/// Integrate `f` over `[a, b]` with the tanh-sinh rule.
///
/// `f` is called as `f(x, x - a, b - x)`; the distances are formed without
/// cancellation, which matters when the integrand is singular at an endpoint.
/// Non-finite integrand values (possible when a node rounds onto a
/// singularity) are treated as zero; the double-exponential weight decay
/// makes their true contribution negligible.
///
/// Refinement stops once two consecutive levels agree to `abs_tol` or
/// `max_level` is reached (capped at [`MAX_DE_LEVEL`]).
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, abs_tol: f64, max_level: usize) -> QuadResult
where
    F: Fn(f64, f64, f64) -> f64,
{
    let levels = de_levels();
    let max_level = max_level.min(MAX_DE_LEVEL);
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let eval = |one_minus_x: f64| -> f64 {
        // Right-side node x = b - half*(1-x_unit), left-side mirrored.
        let dr = half * one_minus_x;
        let dl = half * (2.0 - one_minus_x);
        let right = f(b - dr, dl, dr);
        let left = f(a + dr, dr, dl);
        let mut s = 0.0;
        if right.is_finite() {
            s += right;
        }
        if left.is_finite() {
            s += left;
        }
        s
    };

    // Center node (t = 0): x = 0, weight pi/2.
    let fc = f(center, half, half);
    let mut sum = if fc.is_finite() { 0.5 * PI * fc } else { 0.0 };

    for (i, &w) in levels[0].weight.iter().enumerate() {
        sum += w * eval(levels[0].one_minus_x[i]);
    }
    let mut value = sum * half; // h = 1 at level 0
    let mut error = f64::INFINITY;
    let mut used = 0;

    for (level, table) in levels.iter().enumerate().take(max_level + 1).skip(1) {
        let h = 0.5_f64.powi(level as i32);
        for (i, &w) in table.weight.iter().enumerate() {
            sum += w * eval(table.one_minus_x[i]);
        }
        let new_value = sum * half * h;
        error = (new_value - value).abs();
        value = new_value;
        used = level;
        if error <= abs_tol.max(1e-15 * value.abs()) && level >= 2 {
            break;
        }
    }

    QuadResult {
        value,
        error,
        levels: used,
    }
}

/// A Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on the Legendre polynomial.
    fn build(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-like initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let delta = p / d;
                x -= delta;
                if delta.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Apply the rule to `f` on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let center = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(center + half * x);
        }
        sum * half
    }
}

/// Legendre polynomial `P_n` and its derivative at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared cache of Gauss-Legendre rules by node count.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss-legendre cache poisoned");
    map.entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::build(n)))
        .clone()
}

/// Adaptive Gauss-Legendre: accept a panel when one GL64 pass agrees with
/// the sum of two half-panel passes to `abs_tol`, otherwise recurse.
pub fn gl_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: usize,
) -> QuadResult {
    let driver = GlAdaptive {
        rule: gauss_legendre(64),
        max_depth,
    };
    let mut levels = 0usize;
    let (value, error) = driver.recurse(f, a, b, abs_tol, &mut levels, 0);
    QuadResult {
        value,
        error,
        levels,
    }
}

struct GlAdaptive {
    rule: Arc<GaussLegendre>,
    max_depth: usize,
}

impl GlAdaptive {
    fn recurse<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        abs_tol: f64,
        levels: &mut usize,
        depth: usize,
    ) -> (f64, f64) {
        let whole = self.rule.integrate(f, a, b);
        let mid = 0.5 * (a + b);
        let split = self.rule.integrate(f, a, mid) + self.rule.integrate(f, mid, b);
        let err = (whole - split).abs();
        *levels = (*levels).max(depth);
        if err <= abs_tol.max(1e-15 * split.abs()) || depth >= self.max_depth {
            return (split, err);
        }
        let (lv, le) = self.recurse(f, a, mid, 0.5 * abs_tol, levels, depth + 1);
        let (rv, re) = self.recurse(f, mid, b, 0.5 * abs_tol, levels, depth + 1);
        (lv + rv, le + re)
    }
}
