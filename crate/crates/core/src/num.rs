//! Small floating-point helpers shared by the function kernels.

/// `1 - t^q` formed from the distance `d = 1 - t`, avoiding cancellation
/// when `t` is close to 1: `1 - t^q = -expm1(q ln1p(-d))`.
#[inline]
pub(crate) fn one_minus_pow_q(t: f64, d: f64, q: f64) -> f64 {
    if d < 0.25 {
        -(q * (-d).ln_1p()).exp_m1()
    } else {
        1.0 - t.powf(q)
    }
}

/// `1 - k^q` computed stably for any `k` in `[0, 1)`.
#[inline]
pub(crate) fn one_minus_kq(k: f64, q: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        -(q * k.ln()).exp_m1()
    }
}
