//! Monotonicity, convexity, symmetry and sandwich estimates for the
//! complete integral `K_pq(k)` and the normalized function
//! `f_1(x, k) = sn_pq(2 K_pq(k) x, k)`.

use crate::elliptic::{complete_k, eval_elliptic, EllipticKind, EllipticParams};
use crate::error::{Error, Result};
use crate::exponents::ExponentPair;
use crate::trig::{artanh_r, asin_r};
use serde::Serialize;

/// Values of the two-sided estimate
///
/// ```text
/// (pi_{r'r}/2) asin_r(k)/k  <=  K_{r'r}(k)
///                           <=  (pi_{r'r}/2) artanh_r(k)/k
///                           <=  (pi_{r'r}/2) (1 - k^r)^(-1/r).
/// ```
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SandwichBounds {
    pub lower: f64,
    pub value: f64,
    pub upper_tanh: f64,
    pub upper_alg: f64,
}

impl SandwichBounds {
    /// Whether the chain ordering holds, with `slack` absorbing quadrature
    /// noise at equality-saturating parameters.
    pub fn chain_holds(&self, slack: f64) -> bool {
        self.lower <= self.value + slack
            && self.value <= self.upper_tanh + slack
            && self.upper_tanh <= self.upper_alg + slack
    }
}

/// Evaluate all four terms of the sandwich estimate at `(r, k)`.
pub fn sandwich(r: f64, k: f64) -> Result<SandwichBounds> {
    if !(0.0 < k && k < 1.0) {
        return Err(Error::domain(format!(
            "sandwich requires k in (0, 1), got {k}"
        )));
    }
    let pair = ExponentPair::symmetric(r)?;
    let half_pi = 0.5 * pair.half_period();
    let value = complete_k(&pair, k)?;
    Ok(SandwichBounds {
        lower: half_pi * asin_r(r, k)? / k,
        value,
        upper_tanh: half_pi * artanh_r(r, k)? / k,
        upper_alg: half_pi * (1.0 - k.powf(r)).powf(-1.0 / r),
    })
}

/// Residual of the symmetry relation `K_pq(k) = (p'/q) K_{q'p'}(k^{q/p'})`.
pub fn symmetry_residual(e: &ExponentPair, k: f64) -> Result<f64> {
    let lhs = complete_k(e, k)?;
    let dual = e.dual()?;
    let k_dual = if k == 0.0 {
        0.0
    } else {
        k.powf(e.q() / e.p_prime())
    };
    let rhs = e.p_prime() / e.q() * complete_k(&dual, k_dual)?;
    Ok(lhs - rhs)
}

/// Gap of the homogenization bound `K_pq(k) <= (r/q) K_{r'r}(k^{q/r})`;
/// non-negative, and zero when `p = r'` and `q = r`.
pub fn homo_gap(e: &ExponentPair, k: f64) -> Result<f64> {
    let r = e.r();
    let sym = ExponentPair::symmetric(r)?;
    let k_sym = if k == 0.0 { 0.0 } else { k.powf(e.q() / r) };
    let bound = r / e.q() * complete_k(&sym, k_sym)?;
    Ok(bound - complete_k(e, k)?)
}

/// The ratio `sn_pq(x, k) / x`, which lies in `[1/K_pq(k), 1)` for
/// `x in (0, K]`.
pub fn convexity_ratio(ep: &EllipticParams, x: f64) -> Result<f64> {
    let kq = ep.quarter_period();
    if !(x > 0.0 && x <= kq) {
        return Err(Error::domain(format!(
            "convexity_ratio requires x in (0, K] = (0, {kq}], got {x}"
        )));
    }
    Ok(eval_elliptic(ep, EllipticKind::Sn, x)? / x)
}

/// Which parameter a monotonicity scan varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VaryAxis {
    P,
    Q,
    K,
}

/// First ordering violation found by a scan, if any.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanViolation {
    pub axis_from: f64,
    pub axis_to: f64,
    /// Normalized abscissa where the pointwise ordering failed; `None`
    /// when the complete-integral ordering failed instead.
    pub x: Option<f64>,
    pub value_from: f64,
    pub value_to: f64,
}

/// Outcome of a monotonicity scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub axis: VaryAxis,
    pub ordering_ok: bool,
    pub first_violation: Option<ScanViolation>,
}

const SCAN_SLACK: f64 = 1e-12;

/// Verify the pointwise orderings of `f_1(x, .)` (decreasing in p and q,
/// increasing in k at each fixed normalized `x`) together with the matching
/// orderings of `K_pq(k)` itself, along a grid of the varied parameter.
///
/// `grid` supplies the varied parameter (at least 5 values, increasing);
/// the fixed two come from `(p, q, k)`.  `xs` are normalized abscissas in
/// `(0, 1/2]` (at least 20; the symmetry of `f_1` about 1/2 makes larger
/// abscissas redundant).
pub fn monotonicity_scan(
    p: f64,
    q: f64,
    k: f64,
    axis: VaryAxis,
    grid: &[f64],
    xs: &[f64],
) -> Result<ScanReport> {
    if grid.len() < 5 {
        return Err(Error::domain(
            "monotonicity_scan needs at least 5 grid values",
        ));
    }
    if xs.len() < 20 {
        return Err(Error::domain(
            "monotonicity_scan needs at least 20 x-values",
        ));
    }
    if xs.iter().any(|&x| !(0.0 < x && x <= 0.5)) {
        return Err(Error::domain("scan abscissas must lie in (0, 1/2]"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("scan grid must be strictly increasing"));
    }

    let params_at = |v: f64| -> Result<EllipticParams> {
        let (pp, qq, kk) = match axis {
            VaryAxis::P => (v, q, k),
            VaryAxis::Q => (p, v, k),
            VaryAxis::K => (p, q, v),
        };
        EllipticParams::new(ExponentPair::new(pp, qq)?, kk)
    };

    // f_1 should increase along the grid for K, decrease for P and Q;
    // K_pq(k) follows the same directions.
    let increasing = matches!(axis, VaryAxis::K);

    let mut prev: Option<(f64, Vec<f64>, f64)> = None; // (axis value, f1 row, K)
    for &v in grid {
        let ep = params_at(v)?;
        let kq = ep.quarter_period();
        let row: Vec<f64> = xs
            .iter()
            .map(|&x| eval_elliptic(&ep, EllipticKind::Sn, 2.0 * kq * x))
            .collect::<Result<_>>()?;
        if let Some((v0, row0, kq0)) = &prev {
            let k_ok = if increasing {
                kq >= kq0 - SCAN_SLACK
            } else {
                kq <= kq0 + SCAN_SLACK
            };
            if !k_ok {
                return Ok(ScanReport {
                    axis,
                    ordering_ok: false,
                    first_violation: Some(ScanViolation {
                        axis_from: *v0,
                        axis_to: v,
                        x: None,
                        value_from: *kq0,
                        value_to: kq,
                    }),
                });
            }
            for (i, (&a, &b)) in row0.iter().zip(&row).enumerate() {
                let ok = if increasing {
                    b >= a - SCAN_SLACK
                } else {
                    b <= a + SCAN_SLACK
                };
                if !ok {
                    return Ok(ScanReport {
                        axis,
                        ordering_ok: false,
                        first_violation: Some(ScanViolation {
                            axis_from: *v0,
                            axis_to: v,
                            x: Some(xs[i]),
                            value_from: a,
                            value_to: b,
                        }),
                    });
                }
            }
        }
        prev = Some((v, row, kq));
    }
    Ok(ScanReport {
        axis,
        ordering_ok: true,
        first_violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pair(p: f64, q: f64) -> ExponentPair {
        ExponentPair::new(p, q).unwrap()
    }

    #[test]
    fn sandwich_classical_frozen_values() {
        // r = 2, k = 0.5: all four terms have closed forms or AGM values.
        let b = sandwich(2.0, 0.5).unwrap();
        assert!(
            (b.lower - 1.644_934_066_848_226).abs() < 1e-9,
            "lower {}",
            b.lower
        );
        assert!(
            (b.value - 1.685_750_354_812_596).abs() < 1e-9,
            "value {}",
            b.value
        );
        assert!(
            (b.upper_tanh - 1.725_696_147_611_601).abs() < 1e-8,
            "tanh {}",
            b.upper_tanh
        );
        assert!((b.upper_alg - PI / 2.0 / 0.75_f64.sqrt()).abs() < 1e-12);
        assert!(b.lower < b.value && b.value < b.upper_tanh && b.upper_tanh < b.upper_alg);
    }

    #[test]
    fn sandwich_collapses_as_k_vanishes() {
        let b = sandwich(2.0, 1e-4).unwrap();
        for v in [b.lower, b.value, b.upper_tanh, b.upper_alg] {
            assert!((v - PI / 2.0).abs() < 1e-6, "term {v}");
        }
    }

    #[test]
    fn sandwich_strict_at_interior_parameters() {
        let b = sandwich(3.0, 0.7).unwrap();
        assert!(b.lower < b.value);
        assert!(b.value < b.upper_tanh);
        assert!(b.upper_tanh < b.upper_alg);
    }

    #[test]
    fn sandwich_rejects_bad_modulus() {
        assert!(sandwich(2.0, 0.0).is_err());
        assert!(sandwich(2.0, 1.0).is_err());
    }

    #[test]
    fn sandwich_grid() {
        for i in 0..10 {
            let r = 1.2 + (8.0 - 1.2) * i as f64 / 9.0;
            for j in 0..10 {
                let k = 0.05 + 0.9 * j as f64 / 9.0;
                let b = sandwich(r, k).unwrap();
                assert!(b.chain_holds(1e-12), "chain at r={r}, k={k}: {b:?}");
            }
        }
    }

    #[test]
    fn symmetry_self_dual() {
        // p = q = 2 maps to itself.
        let res = symmetry_residual(&pair(2.0, 2.0), 0.5).unwrap();
        assert!(res.abs() < 1e-10, "residual {res}");
    }

    #[test]
    fn symmetry_generic_pairs() {
        for (p, q, k) in [
            (3.0, 2.0, 0.4),
            (1.5, 4.0, 0.8),
            (2.5, 1.7, 0.2),
            (1.2, 3.0, 0.6),
        ] {
            let res = symmetry_residual(&pair(p, q), k).unwrap();
            assert!(res.abs() < 1e-9, "({p},{q},{k}): residual {res}");
        }
    }

    #[test]
    fn homo_saturates_on_symmetric_pairs() {
        // p = r', q = r: the bound is an identity.
        let e = ExponentPair::symmetric(2.0).unwrap();
        let gap = homo_gap(&e, 0.3).unwrap();
        assert!(gap.abs() < 1e-10, "gap {gap}");
    }

    #[test]
    fn homo_nonnegative() {
        for (p, q, k) in [
            (4.0, 2.0, 0.5),
            (1.2, 5.0, 0.9),
            (3.0, 1.5, 0.0),
            (2.0, 3.0, 0.7),
        ] {
            let gap = homo_gap(&pair(p, q), k).unwrap();
            assert!(gap >= -1e-12, "({p},{q},{k}): gap {gap}");
        }
    }

    #[test]
    fn convexity_classical_endpoint() {
        // x = K at k = 0: ratio = sin(pi/2)/(pi/2) = 2/pi = 1/K.
        let ep = EllipticParams::new(pair(2.0, 2.0), 0.0).unwrap();
        let ratio = convexity_ratio(&ep, PI / 2.0).unwrap();
        assert!((ratio - 2.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn convexity_bounds_hold() {
        let ep = EllipticParams::new(pair(2.0, 2.0), 0.5).unwrap();
        let kq = ep.quarter_period();
        let ratio = convexity_ratio(&ep, 0.8).unwrap();
        assert!(ratio > 1.0 / kq && ratio < 1.0);
        // Near the origin the ratio tends to sn'(0) = 1.
        let ep2 = EllipticParams::new(pair(3.0, 2.0), 0.6).unwrap();
        let r0 = convexity_ratio(&ep2, 1e-6).unwrap();
        assert!((r0 - 1.0).abs() < 1e-5, "ratio near 0: {r0}");
        assert!(convexity_ratio(&ep, 0.0).is_err());
        assert!(convexity_ratio(&ep, kq + 0.1).is_err());
    }

    #[test]
    fn convexity_dense_grid() {
        for (p, q, k) in [(2.0, 2.0, 0.5), (1.5, 3.0, 0.8), (3.0, 2.0, 0.2)] {
            let ep = EllipticParams::new(pair(p, q), k).unwrap();
            let kq = ep.quarter_period();
            for i in 1..=200 {
                let x = kq * i as f64 / 200.0;
                let ratio = convexity_ratio(&ep, x).unwrap();
                assert!(
                    ratio >= 1.0 / kq - 1e-12 && ratio < 1.0 + 1e-12,
                    "({p},{q},{k}) x={x}: ratio {ratio}"
                );
                if x >= 1e-8 {
                    assert!(ratio < 1.0, "strict upper bound at x={x}");
                }
            }
        }
    }

    fn xs20() -> Vec<f64> {
        (1..=20).map(|i| 0.5 * i as f64 / 20.0).collect()
    }

    #[test]
    fn scan_increasing_in_k() {
        let grid = [0.0, 0.2, 0.4, 0.6, 0.8];
        let rep = monotonicity_scan(2.0, 2.0, 0.0, VaryAxis::K, &grid, &xs20()).unwrap();
        assert!(rep.ordering_ok, "violation: {:?}", rep.first_violation);
    }

    #[test]
    fn scan_decreasing_in_p_and_q() {
        let grid = [1.5, 2.0, 3.0, 5.0, 8.0];
        let rep = monotonicity_scan(2.0, 2.0, 0.5, VaryAxis::P, &grid, &xs20()).unwrap();
        assert!(rep.ordering_ok, "p violation: {:?}", rep.first_violation);
        let rep = monotonicity_scan(2.0, 2.0, 0.5, VaryAxis::Q, &grid, &xs20()).unwrap();
        assert!(rep.ordering_ok, "q violation: {:?}", rep.first_violation);
    }

    #[test]
    fn scan_k0_column_matches_trig() {
        // At k = 0, f_1(x) = sin_pq(pi_pq x).
        for p in [1.5, 2.0, 3.0, 5.0] {
            let e = pair(p, 2.0);
            let ep = EllipticParams::new(e, 0.0).unwrap();
            for &x in &xs20() {
                let f1 =
                    eval_elliptic(&ep, EllipticKind::Sn, 2.0 * ep.quarter_period() * x).unwrap();
                let s = crate::trig::eval_trig(&e, crate::trig::TrigKind::Sin, e.half_period() * x)
                    .unwrap();
                assert!((f1 - s).abs() < 1e-10, "p={p} x={x}: {f1} vs {s}");
            }
        }
    }

    #[test]
    fn scan_rejects_undersized_grids() {
        assert!(monotonicity_scan(2.0, 2.0, 0.0, VaryAxis::K, &[0.0, 0.5], &xs20()).is_err());
        assert!(monotonicity_scan(
            2.0,
            2.0,
            0.0,
            VaryAxis::K,
            &[0.0, 0.1, 0.2, 0.3, 0.4],
            &[0.25]
        )
        .is_err());
    }

    #[test]
    fn k_decreasing_in_p_and_q_on_grids() {
        for k in [0.0, 0.5, 0.9] {
            let mut prev = f64::INFINITY;
            for p in [1.3, 1.8, 2.5, 4.0, 7.0] {
                let v = complete_k(&pair(p, 2.0), k).unwrap();
                assert!(v < prev, "K not decreasing in p at ({p}, k={k})");
                prev = v;
            }
            let mut prev = f64::INFINITY;
            for q in [1.3, 1.8, 2.5, 4.0, 7.0] {
                let v = complete_k(&pair(2.0, q), k).unwrap();
                assert!(v < prev, "K not decreasing in q at ({q}, k={k})");
                prev = v;
            }
        }
    }
}
