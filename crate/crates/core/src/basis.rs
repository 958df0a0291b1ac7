//! Decision procedures for the sufficient basis criteria and modulus
//! thresholds.
//!
//! All criteria certify that `{f_n(x, k)}` forms a Riesz basis of `L^2(0,1)`
//! and a Schauder basis of every `L^alpha(0,1)`, `alpha in (1, inf)`:
//!
//! * `thm-general`: `K_pq(k) < 8/(pi^2 - 8)` (the master inequality);
//! * `thm-main`: `(1/q) B(1/r, 1/r) < 8/(pi^2 - 8)` together with
//!   `artanh_r(k^{q/r})/k^{q/r} <= (8q/(pi^2-8)) B(1/r, 1/r)^{-1}`;
//! * `cor-main`: the `r = q` specialization, applicable when `p' <= q`;
//! * `cor-13`: `r/q < 4/(pi^2 - 8)` and
//!   `k < [1 - ((pi^2-8) r / (4q))^r]^{1/q}` (easiest to check);
//! * `neumann`: the direct certificate `sum_{m>=3} |tau_m| < |tau_1|`
//!   with the computed coefficients and the closed-form tail bound.
//!
//! The criteria form an implication chain (cor-13 => thm-main =>
//! thm-general => neumann), which the tests verify pointwise on grids.

use crate::elliptic::{EllipticParams, MODULUS_CAP};
use crate::error::{Error, Result};
use crate::exponents::ExponentPair;
use crate::fourier;
use crate::special::beta;
use crate::trig::artanh_r;
use serde::Serialize;
use std::f64::consts::PI;

/// The single shared definition of `8 / (pi^2 - 8) = 4.27898...`.
pub fn neumann_gap_bound() -> f64 {
    8.0 / (PI * PI - 8.0)
}

/// Slack applied to the non-strict inequalities; quadrature noise must not
/// flip ties at equality-saturating parameters.
pub const INEQ_SLACK: f64 = 1e-12;

/// Default coefficient cutoff for the direct Neumann criterion.
pub const DEFAULT_M_CUTOFF: usize = 201;

/// Which sufficient condition to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    ThmMain,
    CorMain,
    Cor13,
    ThmGeneral,
    NeumannDirect,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Criterion::ThmMain => "thm-main",
            Criterion::CorMain => "cor-main",
            Criterion::Cor13 => "cor-13",
            Criterion::ThmGeneral => "thm-general",
            Criterion::NeumannDirect => "neumann",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm-main" => Ok(Criterion::ThmMain),
            "cor-main" => Ok(Criterion::CorMain),
            "cor-13" => Ok(Criterion::Cor13),
            "thm-general" => Ok(Criterion::ThmGeneral),
            "neumann" => Ok(Criterion::NeumannDirect),
            other => Err(Error::Parse(format!(
                "unknown criterion '{other}' (expected thm-main, cor-main, cor-13, thm-general or neumann)"
            ))),
        }
    }
}

/// A named sub-inequality inside a composite criterion.
#[derive(Debug, Clone, Serialize)]
pub struct SubCondition {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Verdict for one criterion at one parameter point.  `lhs`/`rhs` describe
/// the binding inequality (smallest margin); composite criteria also list
/// each sub-condition.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub criterion: Criterion,
    pub p: f64,
    pub q: f64,
    pub k: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// False only for `cor-main` when its precondition `p' <= q` fails.
    pub applicable: bool,
    pub margin: f64,
    /// Coefficient cutoff, recorded for the direct Neumann criterion so
    /// verdicts are reproducible.
    pub m_cutoff: Option<usize>,
    pub sub_conditions: Vec<SubCondition>,
}

impl CheckReport {
    fn from_subs(
        criterion: Criterion,
        ep: &EllipticParams,
        satisfied: bool,
        subs: Vec<SubCondition>,
    ) -> Self {
        let binding = subs
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .expect("at least one sub-condition");
        CheckReport {
            criterion,
            p: ep.pair().p(),
            q: ep.pair().q(),
            k: ep.k(),
            lhs: binding.lhs,
            rhs: binding.rhs,
            satisfied,
            applicable: true,
            margin: binding.margin,
            m_cutoff: None,
            sub_conditions: subs,
        }
    }
}

fn sub(name: &'static str, lhs: f64, rhs: f64) -> SubCondition {
    SubCondition {
        name,
        lhs,
        rhs,
        margin: rhs - lhs,
    }
}

/// The main sufficient condition: a Beta-function inequality plus a modulus
/// inequality in the combined exponent `r = max{p', q}`.
pub fn check_thm_main(ep: &EllipticParams) -> Result<CheckReport> {
    let pair = ep.pair();
    let (q, r, k) = (pair.q(), pair.r(), ep.k());
    let b = beta(1.0 / r, 1.0 / r)?;
    let alpha = sub("alpha", b / q, neumann_gap_bound());
    let alpha_ok = alpha.margin > 0.0;

    // artanh_r(kappa)/kappa -> 1 as kappa -> 0, so k = 0 uses the limit.
    let kappa = if k == 0.0 { 0.0 } else { k.powf(q / r) };
    let lhs = if k == 0.0 {
        1.0
    } else {
        artanh_r(r, kappa)? / kappa
    };
    let modulus = sub("modulus", lhs, 8.0 * q / (PI * PI - 8.0) / b);
    let modulus_ok = modulus.margin >= -INEQ_SLACK;

    let satisfied = alpha_ok && modulus_ok;
    Ok(CheckReport::from_subs(
        Criterion::ThmMain,
        ep,
        satisfied,
        vec![alpha, modulus],
    ))
}

/// Specialization to `p' <= q` (where `r = q` and the Beta condition holds
/// automatically); inapplicable otherwise.
pub fn check_cor_main(ep: &EllipticParams) -> Result<CheckReport> {
    let pair = ep.pair();
    let (q, k) = (pair.q(), ep.k());
    if pair.p_prime() > q {
        return Ok(CheckReport {
            criterion: Criterion::CorMain,
            p: pair.p(),
            q,
            k,
            lhs: f64::NAN,
            rhs: f64::NAN,
            satisfied: false,
            applicable: false,
            margin: f64::NAN,
            m_cutoff: None,
            sub_conditions: vec![],
        });
    }
    let b = beta(1.0 / q, 1.0 / q)?;
    let lhs = if k == 0.0 { 1.0 } else { artanh_r(q, k)? / k };
    let modulus = sub("modulus", lhs, 8.0 * q / (PI * PI - 8.0) / b);
    let satisfied = modulus.margin >= -INEQ_SLACK;
    Ok(CheckReport::from_subs(
        Criterion::CorMain,
        ep,
        satisfied,
        vec![modulus],
    ))
}

/// The arithmetic-only variant: an exponent-ratio condition plus an explicit
/// modulus threshold, checkable without any quadrature.
pub fn check_cor_13(ep: &EllipticParams) -> Result<CheckReport> {
    let pair = ep.pair();
    let (q, r, k) = (pair.q(), pair.r(), ep.k());
    let ratio = sub("ratio", r / q, 4.0 / (PI * PI - 8.0));
    let ratio_ok = ratio.margin > 0.0;
    // The threshold is real exactly when the ratio condition holds.
    let base = (PI * PI - 8.0) * r / (4.0 * q);
    let threshold = if base < 1.0 {
        (1.0 - base.powf(r)).powf(1.0 / q)
    } else {
        f64::NAN
    };
    let modulus = sub("modulus", k, threshold);
    let modulus_ok = ratio_ok && k < threshold;
    Ok(CheckReport::from_subs(
        Criterion::Cor13,
        ep,
        ratio_ok && modulus_ok,
        vec![ratio, modulus],
    ))
}

/// The master inequality `K_pq(k) < 8/(pi^2 - 8)`.
pub fn check_thm_general(ep: &EllipticParams) -> Result<CheckReport> {
    let cond = sub(
        "complete-integral",
        ep.quarter_period(),
        neumann_gap_bound(),
    );
    let satisfied = cond.margin > 0.0;
    Ok(CheckReport::from_subs(
        Criterion::ThmGeneral,
        ep,
        satisfied,
        vec![cond],
    ))
}

/// Direct certificate: computed `sum_{3<=m<=M} |tau_m|` plus the closed-form
/// tail bound must stay below `|tau_1|`.
pub fn check_neumann_direct(ep: &EllipticParams, m_cutoff: usize) -> Result<CheckReport> {
    let nm = fourier::neumann_margin(ep, m_cutoff)?;
    let cond = sub("neumann", nm.sum_small + nm.tail_bound, nm.tau1);
    let satisfied = cond.margin > 0.0;
    let mut report = CheckReport::from_subs(Criterion::NeumannDirect, ep, satisfied, vec![cond]);
    report.m_cutoff = Some(m_cutoff);
    Ok(report)
}

/// Dispatch a criterion check; `m_cutoff` only affects `neumann`.
pub fn check(ep: &EllipticParams, criterion: Criterion, m_cutoff: usize) -> Result<CheckReport> {
    match criterion {
        Criterion::ThmMain => check_thm_main(ep),
        Criterion::CorMain => check_cor_main(ep),
        Criterion::Cor13 => check_cor_13(ep),
        Criterion::ThmGeneral => check_thm_general(ep),
        Criterion::NeumannDirect => check_neumann_direct(ep, m_cutoff),
    }
}

/// Outcome of a modulus-threshold search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KStar {
    /// The criterion transitions from satisfied to violated at this modulus.
    Threshold(f64),
    /// Satisfied on the whole supported range `[0, 1 - 1e-9]`.
    NeverViolated,
    /// Already violated at `k = 0`; no threshold exists.
    ViolatedAtZero,
}

/// Locate by bisection (to 1e-6) the supremum modulus at which `criterion`
/// stays satisfied at fixed exponents.
pub fn k_star(pair: &ExponentPair, criterion: Criterion, m_cutoff: usize) -> Result<KStar> {
    let satisfied_at = |k: f64| -> Result<bool> {
        let ep = EllipticParams::new(*pair, k)?;
        let report = check(&ep, criterion, m_cutoff)?;
        if !report.applicable {
            return Err(Error::domain(format!(
                "criterion {criterion} is inapplicable at p = {}, q = {} (p' > q)",
                pair.p(),
                pair.q()
            )));
        }
        Ok(report.satisfied)
    };

    if !satisfied_at(0.0)? {
        return Ok(KStar::ViolatedAtZero);
    }
    let mut hi = MODULUS_CAP;
    if satisfied_at(hi)? {
        return Ok(KStar::NeverViolated);
    }
    let mut lo = 0.0;
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if satisfied_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(KStar::Threshold(0.5 * (lo + hi)))
}
