//! Generalized Jacobian elliptic functions.
//!
//! For exponents `(p, q)` and modulus `k in [0, 1)` the complete integral is
//!
//! ```text
//! K_pq(k) = int_0^1 (1 - t^q)^(-1/p) (1 - k^q t^q)^(-1/p') dt,
//! ```
//!
//! and `sn_pq(., k)` is the inverse of the same integral with upper limit
//! `sn`.  The principal branch on `[0, K]` extends to the reals by
//! `sn(2K - x) = sn(x)` and `sn(x + 2K) = -sn(x)`, giving `4K`-periodicity.
//! The companions are `cn = (1 - sn^q)^{1/q}` (antiperiodic like sn) and
//! `dn = (1 - k^q sn^q)^{1/q}` (2K-periodic, positive).
//!
//! At `k = 0` everything degenerates to the generalized trigonometric
//! functions; as `k -> 1` the functions degenerate to hyperbolic ones.
//!
//! The complete integral and the reference inverse use tanh-sinh quadrature
//! (the integrand has an algebraic endpoint singularity); grid evaluation of
//! sn/cn/dn goes through a cached per-`(p,q,k)` kernel that is cross-checked
//! against the reference path in the tests.

use crate::error::{Error, Result};
use crate::exponents::{ExponentPair, Tolerance};
use crate::hyper::{eval_hyp, HypKind};
use crate::kernel::{kernel_for, SnKernel};
use crate::num::{one_minus_kq, one_minus_pow_q};
use crate::quad::tanh_sinh;
use crate::reduce::reduce;
use serde::Serialize;
use std::sync::Arc;

/// Moduli this close to 1 (or closer) are rejected; the complete integral
/// grows only logarithmically, so everything of interest happens below.
pub const MODULUS_CAP: f64 = 1.0 - 1e-9;

/// Exponent pair plus modulus, with the quarter period computed once at
/// construction.  Cheap to copy and safe to share across threads.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EllipticParams {
    pair: ExponentPair,
    k: f64,
    quarter_period: f64,
}

impl EllipticParams {
    pub fn new(pair: ExponentPair, k: f64) -> Result<Self> {
        Self::with_tolerance(pair, k, &Tolerance::default())
    }

    pub fn with_tolerance(pair: ExponentPair, k: f64, tol: &Tolerance) -> Result<Self> {
        if !(0.0..1.0).contains(&k) || k.is_nan() {
            return Err(Error::domain(format!(
                "modulus k must lie in [0, 1), got {k}"
            )));
        }
        if k > MODULUS_CAP {
            return Err(Error::domain(format!(
                "modulus k = {k} exceeds the supported cap 1 - 1e-9"
            )));
        }
        let quarter_period = complete_integral(&pair, k, tol);
        Ok(EllipticParams {
            pair,
            k,
            quarter_period,
        })
    }

    pub fn pair(&self) -> &ExponentPair {
        &self.pair
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The complete integral `K_pq(k)`.
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    fn kernel(&self) -> Arc<SnKernel> {
        kernel_for(self.pair.p(), self.pair.q(), self.k)
    }
}

/// `K_pq(k)` by tanh-sinh quadrature of the defining integral.
fn complete_integral(pair: &ExponentPair, k: f64, tol: &Tolerance) -> f64 {
    let p = pair.p();
    let q = pair.q();
    let pp = pair.p_prime();
    let kq = if k == 0.0 { 0.0 } else { k.powf(q) };
    let omkq = one_minus_kq(k, q);
    tanh_sinh(
        |t, _, dr| {
            let omtq = one_minus_pow_q(t, dr, q);
            omtq.powf(-1.0 / p) * (omkq + kq * omtq).powf(-1.0 / pp)
        },
        0.0,
        1.0,
        tol.abs_tol,
        tol.max_subdivisions,
    )
    .value
}

/// Convenience wrapper: validate the modulus and return `K_pq(k)`.
pub fn complete_k(pair: &ExponentPair, k: f64) -> Result<f64> {
    Ok(EllipticParams::new(*pair, k)?.quarter_period())
}

/// Inverse of `sn`: `int_0^y (1-t^q)^(-1/p) (1-k^q t^q)^(-1/p') dt` for
/// `y in [0, 1]`.  This is the reference path (tanh-sinh on the原
/// integrand); the evaluation kernel is checked against it in tests.
pub fn asn(ep: &EllipticParams, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) || y.is_nan() {
        return Err(Error::domain(format!("asn requires y in [0, 1], got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let p = ep.pair.p();
    let q = ep.pair.q();
    let pp = ep.pair.p_prime();
    let k = ep.k;
    let kq = if k == 0.0 { 0.0 } else { k.powf(q) };
    let omkq = one_minus_kq(k, q);
    Ok(tanh_sinh(
        |t, _, dr| {
            let omtq = one_minus_pow_q(t, dr + (1.0 - y), q);
            omtq.powf(-1.0 / p) * (omkq + kq * omtq).powf(-1.0 / pp)
        },
        0.0,
        y,
        1e-12,
        20,
    )
    .value)
}

/// Which elliptic function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticKind {
    Sn,
    Cn,
    Dn,
}

/// One evaluation of the elliptic triple.
///
/// Satisfies `cn^q + sn^q = 1` and `dn^q + k^q sn^q = 1` on the principal
/// branch (up to floating error; the extensions flip signs of sn/cn).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EllipticValue {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub quarter_period: f64,
}

/// Evaluate sn, cn and dn together at any real `x`.
pub fn eval_all(ep: &EllipticParams, x: f64) -> Result<EllipticValue> {
    if !x.is_finite() {
        return Err(Error::domain(format!(
            "elliptic argument must be finite, got {x}"
        )));
    }
    let kernel = ep.kernel();
    let red = reduce(x, kernel.quarter);
    let pr = kernel.principal(red.principal);
    let q = ep.pair.q();
    let kq = if ep.k == 0.0 { 0.0 } else { ep.k.powf(q) };
    let omkq = one_minus_kq(ep.k, q);
    Ok(EllipticValue {
        sn: red.sign_s * pr.y,
        cn: red.sign_c * pr.w.powf(1.0 / q),
        dn: (omkq + kq * pr.w).powf(1.0 / q),
        quarter_period: ep.quarter_period,
    })
}

/// Evaluate a single elliptic function at any real `x`.
pub fn eval_elliptic(ep: &EllipticParams, kind: EllipticKind, x: f64) -> Result<f64> {
    let v = eval_all(ep, x)?;
    Ok(match kind {
        EllipticKind::Sn => v.sn,
        EllipticKind::Cn => v.cn,
        EllipticKind::Dn => v.dn,
    })
}

impl EllipticValue {
    /// `(sn)' = cn^{q/p} dn^{q/p'}` on the principal branch.
    pub fn sn_prime(&self, pair: &ExponentPair) -> f64 {
        self.cn.powf(pair.q() / pair.p()) * self.dn.powf(pair.q() / pair.p_prime())
    }

    /// `(cn)' = -sn^{q-1} cn^{1-q/p'} dn^{q/p'}` on the principal branch.
    pub fn cn_prime(&self, pair: &ExponentPair) -> f64 {
        let q = pair.q();
        -self.sn.powf(q - 1.0)
            * self.cn.powf(1.0 - q / pair.p_prime())
            * self.dn.powf(q / pair.p_prime())
    }

    /// `(dn)' = -k^q sn^{q-1} cn^{q/p} dn^{1-q/p}` on the principal branch.
    pub fn dn_prime(&self, pair: &ExponentPair, k: f64) -> f64 {
        let q = pair.q();
        -k.powf(q)
            * self.sn.powf(q - 1.0)
            * self.cn.powf(q / pair.p())
            * self.dn.powf(1.0 - q / pair.p())
    }
}

/// Left-hand side of the p-Laplacian equation satisfied by `u = sn_pq(., k)`:
///
/// ```text
/// (|u'|^{p-2} u')' + ((p-1)q/p) |u|^{q-2} u
///     (1 + (p-1)k^q - p k^q |u|^q) (1 - k^q |u|^q)^{p-2}
/// ```
///
/// with the outer derivative taken by central differences of the closed-form
/// `u' = cn^{q/p} dn^{q/p'}`.  Interior `x` only; the residual is O(h^2).
pub fn ode_residual(ep: &EllipticParams, x: f64, h: f64) -> Result<f64> {
    let kq = ep.quarter_period;
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::domain("step h must be positive"));
    }
    if !(x - h > 0.0 && x + h < kq) {
        return Err(Error::domain(format!(
            "ode_residual needs [x-h, x+h] inside (0, K) = (0, {kq}), got x={x}, h={h}"
        )));
    }
    let p = ep.pair.p();
    let q = ep.pair.q();
    let k_pow_q = if ep.k == 0.0 { 0.0 } else { ep.k.powf(q) };

    // phi(x) = |u'|^{p-2} u' = (u')^{p-1} on (0, K) where u' >= 0.
    let phi = |t: f64| -> Result<f64> {
        let v = eval_all(ep, t)?;
        Ok(v.sn_prime(ep.pair()).powf(p - 1.0))
    };
    let outer = (phi(x + h)? - phi(x - h)?) / (2.0 * h);

    let u = eval_elliptic(ep, EllipticKind::Sn, x)?;
    let uq = u.powf(q);
    let reaction = (p - 1.0) * q / p
        * u.powf(q - 1.0)
        * (1.0 + (p - 1.0) * k_pow_q - p * k_pow_q * uq)
        * (1.0 - k_pow_q * uq).powf(p - 2.0);
    Ok(outer + reaction)
}

/// Gap record for the `k -> 1` degeneration toward the hyperbolic functions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LimitGap {
    pub k: f64,
    pub sn_gap: f64,
    pub cn_gap: f64,
}

/// Evaluate `|sn_pq(x,k) - tanh_q x|` and `|cn_pq(x,k) - 1/cosh_q x|` along
/// an increasing modulus sequence.
pub fn limit_k_to_1(pair: &ExponentPair, x: f64, ks: &[f64]) -> Result<Vec<LimitGap>> {
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    let q = pair.q();
    let diag = ExponentPair::new(q, q)?;
    let tanh_q = eval_hyp(&diag, HypKind::Tanh, x)?;
    let cosh_q = eval_hyp(&diag, HypKind::Cosh, x)?;
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let ep = EllipticParams::new(*pair, k)?;
        let v = eval_all(&ep, x)?;
        out.push(LimitGap {
            k,
            sn_gap: (v.sn - tanh_q).abs(),
            cn_gap: (v.cn - 1.0 / cosh_q).abs(),
        });
    }
    Ok(out)
}
