//! Generalized trigonometric functions.
//!
//! The generalized sine is defined through its inverse,
//!
//! ```text
//! x = int_0^{sin_pq x} (1 - t^q)^(-1/p) dt,     x in [0, pi_pq / 2],
//! ```
//!
//! extended to the reals by `sin_pq(pi_pq - x) = sin_pq x` and the antiperiod
//! `sin_pq(x + pi_pq) = -sin_pq x`.  The companion cosine is
//! `cos_pq x = (1 - sin_pq^q x)^(1/q)` (even, extended the same way) and
//! `tan_pq = sin_pq / cos_pq`.
//!
//! Inversion of the defining integral uses safeguarded Newton (bisection
//! bracket, closed-form derivative).  On the outer half of the principal
//! branch the root is found in the complementary variable `v` with
//! `1 - sin^q = v^{p'}`, which keeps `cos_pq` fully accurate near the
//! quarter period where `1 - sin^q` would otherwise cancel.

use crate::error::{Error, Result};
use crate::exponents::{ExponentPair, Tolerance};
use crate::quad::{gl_adaptive, tanh_sinh, QuadResult};
use crate::reduce::reduce;

/// Which trigonometric function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
    Tan,
}

/// Tan is declared at a pole when |cos_pq| falls below this.
pub const TAN_POLE_TOL: f64 = 1e-12;

const NEWTON_STEP_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 60;

/// Half period `pi_pq` (closed form via the Beta function).
pub fn pi_pq(e: &ExponentPair) -> f64 {
    e.half_period()
}

/// Half period by direct quadrature of the defining integral; the closed
/// form is the production path, this is the cross-check route.
pub fn pi_pq_quadrature(e: &ExponentPair, tol: &Tolerance) -> QuadResult {
    let p = e.p();
    let q = e.q();
    let mut r = tanh_sinh(
        |t, _, dr| one_minus_pow_q(t, dr, q).powf(-1.0 / p),
        0.0,
        1.0,
        tol.abs_tol,
        tol.max_subdivisions,
    );
    r.value *= 2.0;
    r.error *= 2.0;
    r
}

/// `1 - t^q` formed from the distance `dr = 1 - t` without cancellation.
#[inline]
fn one_minus_pow_q(t: f64, dr: f64, q: f64) -> f64 {
    if dr < 0.25 {
        -(q * (-dr).ln_1p()).exp_m1()
    } else {
        1.0 - t.powf(q)
    }
}

/// Inverse generalized sine: `int_0^y (1 - t^q)^(-1/p) dt` for `y in [0, 1]`.
pub fn asin_pq(e: &ExponentPair, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) || y.is_nan() {
        return Err(Error::domain(format!(
            "asin_pq requires y in [0, 1], got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let p = e.p();
    let q = e.q();
    Ok(tanh_sinh(
        |t, _, dr| {
            // Distance to the singular point t = 1 is dr + (1 - y).
            let d1 = dr + (1.0 - y);
            one_minus_pow_q(t, d1, q).powf(-1.0 / p)
        },
        0.0,
        y,
        1e-12,
        20,
    )
    .value)
}

/// Inverse generalized hyperbolic tangent: `int_0^x dt / (1 - t^r)`,
/// defined for `x in [0, 1)` (the integral diverges at 1).
pub fn artanh_r(r: f64, x: f64) -> Result<f64> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::domain(format!("artanh_r requires r > 1, got {r}")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!(
            "artanh_r requires x in [0, 1), got {x} (the integral diverges at 1)"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(gl_adaptive(&|t: f64| 1.0 / (1.0 - t.powf(r)), 0.0, x, 1e-13, 28).value)
}

/// Inverse of `sin_r` (the `p = q = r` case): `int_0^x (1 - s^r)^(-1/r) ds`.
pub fn asin_r(r: f64, x: f64) -> Result<f64> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::domain(format!("asin_r requires r > 1, got {r}")));
    }
    let e = ExponentPair::new(r, r)?;
    asin_pq(&e, x)
}

/// Principal-branch pair `(sin_pq m, cos_pq m)` for `m in [0, pi_pq/2]`.
///
/// The split point is where `sin^q = 1/2`: below it we solve for `y` with the
/// integrand mapped onto a fixed interval; above it we solve for the
/// complementary variable `v = (1 - y^q)^{1/p'}`, for which the inverse
/// integral is smooth all the way to the quarter period.
fn principal_sin_cos(e: &ExponentPair, m: f64) -> (f64, f64) {
    let p = e.p();
    let q = e.q();
    let pp = e.p_prime();
    let quarter = 0.5 * e.half_period();
    if m <= 0.0 {
        return (0.0, 1.0);
    }
    if m >= quarter {
        return (1.0, 0.0);
    }

    let y_split = 0.5_f64.powf(1.0 / q);
    let v_split = 0.5_f64.powf(1.0 / pp);
    // asin as a smooth integral for y <= y_split: substitute t = y s.
    let asin_smooth = |y: f64| -> f64 {
        y * gl_adaptive(
            &|s: f64| {
                let ts = y * s;
                (1.0 - ts.powf(q)).powf(-1.0 / p)
            },
            0.0,
            1.0,
            3e-15,
            20,
        )
        .value
    };
    // Remaining arc from the quarter period as a function of v:
    // quarter - asin(y) = (p'/q) int_0^v (1 - u^{p'})^{1/q - 1} du.
    let tail = |v: f64| -> f64 {
        pp / q
            * gl_adaptive(
                &|u: f64| (1.0 - u.powf(pp)).powf(1.0 / q - 1.0),
                0.0,
                v,
                3e-15,
                20,
            )
            .value
    };
    let x_split = asin_smooth(y_split);

    if m <= x_split {
        // Newton for asin(y) = m on [0, y_split]; derivative of the inverse
        // integral is (1 - y^q)^(-1/p).
        let mut lo = 0.0;
        let mut hi = y_split;
        let mut y = y_split * (m / x_split);
        for _ in 0..NEWTON_MAX_ITER {
            let f = asin_smooth(y) - m;
            if f > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let step = -f * (1.0 - y.powf(q)).powf(1.0 / p);
            let mut next = y + step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let delta = next - y;
            y = next;
            if delta.abs() < NEWTON_STEP_TOL {
                break;
            }
        }
        let w = 1.0 - y.powf(q); // y^q <= 1/2 here, no cancellation
        (y, w.powf(1.0 / q))
    } else {
        // Newton for tail(v) = quarter - m on [0, v_split].
        let target = quarter - m;
        let dtail = |v: f64| pp / q * (1.0 - v.powf(pp)).powf(1.0 / q - 1.0);
        let mut lo = 0.0;
        let mut hi = v_split;
        let mut v = v_split * (target / (quarter - x_split));
        for _ in 0..NEWTON_MAX_ITER {
            let f = tail(v) - target;
            if f > 0.0 {
                hi = v;
            } else {
                lo = v;
            }
            let mut next = v - f / dtail(v);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let delta = next - v;
            v = next;
            if delta.abs() < NEWTON_STEP_TOL {
                break;
            }
        }
        let w = v.powf(pp); // w = 1 - y^q, exact in the tail variable
        ((1.0 - w).powf(1.0 / q), v.powf(pp / q))
    }
}

/// Evaluate `sin_pq`, `cos_pq` or `tan_pq` at any real `x`.
pub fn eval_trig(e: &ExponentPair, kind: TrigKind, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!(
            "trig argument must be finite, got {x}"
        )));
    }
    let quarter = 0.5 * e.half_period();
    let red = reduce(x, quarter);
    let (s, c) = principal_sin_cos(e, red.principal);
    let sin = red.sign_s * s;
    let cos = red.sign_c * c;
    match kind {
        TrigKind::Sin => Ok(sin),
        TrigKind::Cos => Ok(cos),
        TrigKind::Tan => {
            if cos.abs() < TAN_POLE_TOL {
                Err(Error::Pole(format!(
                    "tan_pq pole near x = {x} (|cos_pq| = {:.3e})",
                    cos.abs()
                )))
            } else {
                Ok(sin / cos)
            }
        }
    }
}
