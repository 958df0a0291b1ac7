//! Generalized hyperbolic functions.
//!
//! `sinh_pq` is the odd inverse of
//!
//! ```text
//! x = int_0^{sinh_pq x} (1 + t^q)^(-1/p) dt,
//! ```
//!
//! with `cosh_pq = (1 + sinh_pq^q)^{1/q}` and `tanh_pq = sinh_pq / cosh_pq`.
//!
//! For `q > p` the defining integral converges as its upper limit grows, so
//! `sinh_pq` blows up at a finite abscissa `L`; beyond `L` this module
//! returns `inf` for sinh/cosh and the limit value 1 for tanh.  The cases
//! used by the elliptic `k -> 1` limits all have `p = q`, where the inverse
//! exists for every real `x`.

use crate::error::{Error, Result};
use crate::exponents::ExponentPair;
use crate::quad::{gl_adaptive, tanh_sinh};

/// Which hyperbolic function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypKind {
    Sinh,
    Cosh,
    Tanh,
}

const NEWTON_STEP_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 60;

/// `int_0^y (1 + t^q)^(-1/p) dt` over dyadic panels (smooth everywhere).
fn asinh_pq(e: &ExponentPair, y: f64) -> f64 {
    let p = e.p();
    let q = e.q();
    let f = |t: f64| (1.0 + t.powf(q)).powf(-1.0 / p);
    if y <= 1.0 {
        return gl_adaptive(&f, 0.0, y, 1e-13, 20).value;
    }
    let mut total = gl_adaptive(&f, 0.0, 1.0, 1e-13, 20).value;
    let mut a = 1.0;
    while a < y {
        let b = (2.0 * a).min(y);
        total += gl_adaptive(&f, a, b, 1e-13, 20).value;
        a = b;
    }
    total
}

/// Finite escape abscissa `L = int_0^inf (1 + t^q)^(-1/p) dt` when `q > p`.
fn escape_abscissa(e: &ExponentPair) -> f64 {
    let p = e.p();
    let q = e.q();
    // Split at t = 1; substitute t = 1/s on the far piece, which turns it
    // into int_0^1 s^{q/p - 2} (1 + s^q)^(-1/p) ds with an integrable
    // endpoint singularity at s = 0 (since q > p).
    let near = gl_adaptive(
        &|t: f64| (1.0 + t.powf(q)).powf(-1.0 / p),
        0.0,
        1.0,
        1e-13,
        20,
    )
    .value;
    let far = tanh_sinh(
        |s, _, _| s.powf(q / p - 2.0) * (1.0 + s.powf(q)).powf(-1.0 / p),
        0.0,
        1.0,
        1e-12,
        20,
    )
    .value;
    near + far
}

/// Evaluate `sinh_pq`, `cosh_pq` or `tanh_pq` at any real `x`.
pub fn eval_hyp(e: &ExponentPair, kind: HypKind, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("hyperbolic argument must not be NaN"));
    }
    let p = e.p();
    let q = e.q();
    let ax = x.abs();
    if ax == 0.0 {
        return Ok(match kind {
            HypKind::Sinh | HypKind::Tanh => 0.0,
            HypKind::Cosh => 1.0,
        });
    }

    let sinh_abs = if q > p && ax >= escape_abscissa(e) {
        f64::INFINITY
    } else {
        // Bracket by doubling, then safeguarded Newton with the closed-form
        // derivative of the inverse: d(asinh)/dy = (1 + y^q)^(-1/p).
        let mut hi = 1.0;
        while asinh_pq(e, hi) < ax {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        let mut y = 0.5 * hi;
        for _ in 0..NEWTON_MAX_ITER {
            let f = asinh_pq(e, y) - ax;
            if f > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let mut next = y - f * (1.0 + y.powf(q)).powf(1.0 / p);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let delta = next - y;
            y = next;
            if delta.abs() < NEWTON_STEP_TOL * y.max(1.0) {
                break;
            }
        }
        y
    };

    Ok(match kind {
        HypKind::Sinh => x.signum() * sinh_abs,
        HypKind::Cosh => {
            if sinh_abs.is_infinite() {
                f64::INFINITY
            } else {
                (1.0 + sinh_abs.powf(q)).powf(1.0 / q)
            }
        }
        HypKind::Tanh => {
            if sinh_abs.is_infinite() {
                x.signum()
            } else {
                x.signum() * sinh_abs / (1.0 + sinh_abs.powf(q)).powf(1.0 / q)
            }
        }
    })
}
