//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measured runtime (run with `--nocapture` to see them).
//!
//! Time budgets are enforced as stated when built with optimizations
//! (`cargo test --release --test acceptance`); unoptimized builds get a
//! 25x allowance so `cargo test --workspace` stays meaningful everywhere.

use gjef::analysis::{self, VaryAxis};
use gjef::basis::{self, Criterion, KStar};
use gjef::elliptic::{self, EllipticKind, EllipticParams};
use gjef::fourier::{self, SineCoefficients};
use gjef::operator::{self, GridFunction};
use gjef::trig::{self, TrigKind};
use gjef::{ExponentPair, Tolerance};
use std::f64::consts::PI;
use std::time::Instant;

fn budget(seconds: f64) -> f64 {
    if cfg!(debug_assertions) {
        seconds * 25.0
    } else {
        seconds
    }
}

fn pair(p: f64, q: f64) -> ExponentPair {
    ExponentPair::new(p, q).unwrap()
}

fn params(p: f64, q: f64, k: f64) -> EllipticParams {
    EllipticParams::new(pair(p, q), k).unwrap()
}

/// Independent AGM oracle for the classical complete integral.
fn agm_k(k: f64) -> f64 {
    let mut a = 1.0_f64;
    let mut b = (1.0 - k * k).sqrt();
    for _ in 0..60 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() < 1e-17 * an {
            return PI / (2.0 * an);
        }
        a = an;
        b = bn;
    }
    PI / (a + b)
}

fn finish(criterion: &str, start: Instant, seconds: f64, detail: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion {criterion}: PASS ({elapsed:.2} s) - {detail}");
    assert!(
        elapsed < budget(seconds),
        "criterion {criterion} exceeded its {seconds} s budget: {elapsed:.2} s"
    );
}

#[test]
fn criterion_01_classical_reduction_to_agm() {
    let start = Instant::now();
    let e = pair(2.0, 2.0);
    let mut worst = 0.0_f64;
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let ours = elliptic::complete_k(&e, k).unwrap();
        let oracle = agm_k(k);
        let rel = ((ours - oracle) / oracle).abs();
        worst = worst.max(rel);
        assert!(
            rel < 1e-10,
            "K_22({k}) = {ours} vs AGM {oracle} (rel {rel:.3e})"
        );
    }
    finish(
        "01 classical-reduction",
        start,
        1.0,
        &format!("K_22 vs AGM on k=0.1..0.9, worst rel err {worst:.2e}"),
    );
}

#[test]
fn criterion_02_cor_main_threshold() {
    let start = Instant::now();
    let t = match basis::k_star(&pair(2.0, 2.0), Criterion::CorMain, 201).unwrap() {
        KStar::Threshold(t) => t,
        other => panic!("expected a threshold, got {other:?}"),
    };
    assert!((t - 0.9909).abs() < 5e-4, "threshold {t}");
    finish(
        "02 cor-main-threshold",
        start,
        5.0,
        &format!("k* = {t:.6} (expected 0.9909 +/- 5e-4)"),
    );
}

#[test]
fn criterion_03_cor_13_threshold() {
    let start = Instant::now();
    let t = match basis::k_star(&pair(2.0, 2.0), Criterion::Cor13, 201).unwrap() {
        KStar::Threshold(t) => t,
        other => panic!("expected a threshold, got {other:?}"),
    };
    assert!((t - 0.884).abs() < 1e-3, "threshold {t}");
    finish(
        "03 cor-13-threshold",
        start,
        5.0,
        &format!("k* = {t:.6} (expected 0.884 +/- 1e-3)"),
    );
}

#[test]
fn criterion_04_neumann_certificate_at_k099() {
    let start = Instant::now();
    let ep = params(2.0, 2.0, 0.99);
    let m = fourier::neumann_margin(&ep, 201).unwrap();
    assert!(
        m.margin > 0.0,
        "margin {} (sum {}, tail {}, tau1 {})",
        m.margin,
        m.sum_small,
        m.tail_bound,
        m.tau1
    );
    finish(
        "04 neumann-certificate",
        start,
        30.0,
        &format!(
            "k=0.99, M=201: |tau_1| = {:.6} > {:.6} + {:.6} (margin {:.4})",
            m.tau1, m.sum_small, m.tail_bound, m.margin
        ),
    );
}

#[test]
fn criterion_05_operator_identity() {
    let start = Instant::now();
    let ep = params(2.0, 2.0, 0.5);
    let coeffs = SineCoefficients::compute(&ep, 201).unwrap();
    let mut worst = 0.0_f64;
    for n in 1..=3usize {
        let e_n = operator::sine_grid(4096, 2.0, n).unwrap();
        let t_en = operator::apply_t(&e_n, &coeffs).unwrap();
        let f_n = operator::fn_grid(&ep, 4096, 2.0, n).unwrap();
        for (a, b) in t_en.samples().iter().zip(f_n.samples()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst < 1e-3, "max grid error {worst}");
    finish(
        "05 operator-identity",
        start,
        60.0,
        &format!("max |T e_n - f_n| over n=1..3 at N=4096, M=201: {worst:.2e}"),
    );
}

#[test]
fn criterion_06_identity_suite() {
    let start = Instant::now();
    let ps = [1.5, 2.0, 3.0];
    let qs = [1.5, 2.0, 3.0];
    let ks = [0.0, 0.4, 0.8];
    let h = 1e-6;
    for &p in &ps {
        for &q in &qs {
            for &k in &ks {
                let ep = params(p, q, k);
                let e = *ep.pair();
                let kq = ep.quarter_period();
                let k_pow_q = if k == 0.0 { 0.0 } else { k.powf(q) };

                // Quadratic identities over a full period.
                for i in 0..200 {
                    let x = 4.0 * kq * i as f64 / 200.0 - 1.0;
                    let v = elliptic::eval_all(&ep, x).unwrap();
                    let a = v.cn.abs().powf(q) + v.sn.abs().powf(q);
                    assert!((a - 1.0).abs() < 1e-10, "({p},{q},{k}) x={x}: cn/sn {a}");
                    let b = v.dn.powf(q) + k_pow_q * v.sn.abs().powf(q);
                    assert!((b - 1.0).abs() < 1e-10, "({p},{q},{k}) x={x}: dn {b}");
                }

                // Five derivative formulas by central differences:
                // (sn)', (cn)', (dn)' and the trigonometric (sin)', (tan)'.
                for i in 1..=50 {
                    let x = kq * (0.02 + 0.94 * i as f64 / 51.0);
                    let v = elliptic::eval_all(&ep, x).unwrap();
                    let d = |kind: EllipticKind| {
                        (elliptic::eval_elliptic(&ep, kind, x + h).unwrap()
                            - elliptic::eval_elliptic(&ep, kind, x - h).unwrap())
                            / (2.0 * h)
                    };
                    assert!((d(EllipticKind::Sn) - v.sn_prime(&e)).abs() < 1e-6);
                    assert!((d(EllipticKind::Cn) - v.cn_prime(&e)).abs() < 1e-6);
                    assert!((d(EllipticKind::Dn) - v.dn_prime(&e, k)).abs() < 1e-6);
                }
                for i in 1..10 {
                    let x = 0.5 * e.half_period() * (0.05 + 0.85 * i as f64 / 10.0);
                    let s = |t: f64| trig::eval_trig(&e, TrigKind::Sin, t).unwrap();
                    let c = trig::eval_trig(&e, TrigKind::Cos, x).unwrap();
                    let ds = (s(x + h) - s(x - h)) / (2.0 * h);
                    assert!((ds - c.powf(q / p)).abs() < 1e-6, "(sin)' at ({p},{q}) {x}");
                    let t = |t: f64| trig::eval_trig(&e, TrigKind::Tan, t).unwrap();
                    let dt = (t(x + h) - t(x - h)) / (2.0 * h);
                    let want = c.powf(-1.0 - q / e.p_prime());
                    assert!(
                        (dt - want).abs() < 1e-5 * want.max(1.0),
                        "(tan)' at ({p},{q}) {x}"
                    );
                }

                // Key reduction ((sin)')^p + sin^q = 1; five-point stencil
                // keeps FD noise (amplified by the p-th power) below 1e-8.
                for i in 1..10 {
                    let x = 0.5 * e.half_period() * (0.05 + 0.88 * i as f64 / 10.0);
                    let hh = 1e-4;
                    let s = |t: f64| trig::eval_trig(&e, TrigKind::Sin, t).unwrap();
                    let ds = (-s(x + 2.0 * hh) + 8.0 * s(x + hh) - 8.0 * s(x - hh)
                        + s(x - 2.0 * hh))
                        / (12.0 * hh);
                    let lhs = ds.powf(p) + s(x).powf(q);
                    assert!(
                        (lhs - 1.0).abs() < 1e-8,
                        "reduction at ({p},{q}) {x}: {lhs}"
                    );
                }

                // Total curvature: int_0^K |y''| dx = 1.
                let pp = e.p_prime();
                let integral = gjef::quad::tanh_sinh(
                    |x, _, _| {
                        let v = elliptic::eval_all(&ep, x).unwrap();
                        let w = v.cn.powf(q);
                        let wk = v.dn.powf(q);
                        (q / p)
                            * v.sn.powf(q - 1.0)
                            * w.powf(2.0 / p - 1.0)
                            * wk.powf(2.0 / pp - 1.0)
                            * ((1.0 - k_pow_q) + p * k_pow_q * w)
                    },
                    0.0,
                    kq,
                    1e-9,
                    12,
                )
                .value;
                assert!(
                    (integral - 1.0).abs() < 1e-6,
                    "({p},{q},{k}): total curvature {integral}"
                );
            }
        }
    }
    finish(
        "06 identity-suite",
        start,
        120.0,
        "quadratic identities, 5 derivative formulas, reduction, curvature on 3x3x3 grid",
    );
}

#[test]
fn criterion_07_lemma_suite() {
    let start = Instant::now();

    // Sandwich chain on a 10x10 (r, k) grid.
    for i in 0..10 {
        let r = 1.2 + (8.0 - 1.2) * i as f64 / 9.0;
        for j in 0..10 {
            let k = 0.05 + 0.9 * j as f64 / 9.0;
            let b = analysis::sandwich(r, k).unwrap();
            assert!(b.chain_holds(1e-12), "sandwich at r={r}, k={k}: {b:?}");
        }
    }

    // Symmetry and homogenization on a (p, q, k) grid.
    let mut worst_sym = 0.0_f64;
    for &p in &[1.3, 1.5, 2.0, 3.0, 4.5] {
        for &q in &[1.3, 2.0, 3.7] {
            for &k in &[0.0, 0.4, 0.8] {
                let e = pair(p, q);
                let res = analysis::symmetry_residual(&e, k).unwrap();
                worst_sym = worst_sym.max(res.abs());
                assert!(res.abs() < 1e-9, "symmetry at ({p},{q},{k}): {res}");
                let gap = analysis::homo_gap(&e, k).unwrap();
                assert!(gap >= -1e-12, "homo at ({p},{q},{k}): {gap}");
            }
        }
    }
    // Homogenization saturates on symmetric pairs.
    for &r in &[1.5, 2.0, 3.0] {
        let e = ExponentPair::symmetric(r).unwrap();
        let gap = analysis::homo_gap(&e, 0.35).unwrap();
        assert!(gap.abs() < 1e-10, "saturation at r={r}: {gap}");
    }

    // Convexity bounds at 200 abscissas per parameter set.
    for (p, q, k) in [
        (2.0, 2.0, 0.5),
        (1.5, 3.0, 0.8),
        (3.0, 2.0, 0.2),
        (2.0, 4.0, 0.6),
    ] {
        let ep = params(p, q, k);
        let kq = ep.quarter_period();
        for i in 1..=200 {
            let x = kq * i as f64 / 200.0;
            let ratio = analysis::convexity_ratio(&ep, x).unwrap();
            assert!(
                ratio >= 1.0 / kq - 1e-12 && ratio < 1.0 + 1e-12,
                "convexity at ({p},{q},{k}) x={x}: {ratio}"
            );
        }
    }

    // Monotonicity scans along each axis.
    let xs: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64 / 20.0).collect();
    let rep =
        analysis::monotonicity_scan(2.0, 2.0, 0.0, VaryAxis::K, &[0.0, 0.2, 0.4, 0.6, 0.8], &xs)
            .unwrap();
    assert!(rep.ordering_ok, "k-scan: {:?}", rep.first_violation);
    let grid = [1.5, 2.0, 3.0, 5.0, 8.0];
    for axis in [VaryAxis::P, VaryAxis::Q] {
        let rep = analysis::monotonicity_scan(2.0, 2.0, 0.5, axis, &grid, &xs).unwrap();
        assert!(rep.ordering_ok, "{axis:?}-scan: {:?}", rep.first_violation);
    }

    finish(
        "07 lemma-suite",
        start,
        120.0,
        &format!("sandwich/symmetry/homo/convexity/monotonicity grids, worst symmetry residual {worst_sym:.2e}"),
    );
}

#[test]
fn criterion_08_proof_chain_implications() {
    let start = Instant::now();
    let ps = [1.4, 1.8, 2.0, 3.0, 5.0];
    let qs = [1.4, 1.8, 2.0, 3.0, 5.0];
    let ks = [0.0, 0.15, 0.3, 0.5, 0.7, 0.85, 0.95];
    let mut checked = 0usize;
    let mut neumann_checked = 0usize;
    for &p in &ps {
        for &q in &qs {
            for &k in &ks {
                let ep = params(p, q, k);
                let c13 = basis::check_cor_13(&ep).unwrap().satisfied;
                let main = basis::check_thm_main(&ep).unwrap().satisfied;
                let general = basis::check_thm_general(&ep).unwrap().satisfied;
                if c13 {
                    assert!(main, "cor-13 => thm-main failed at ({p},{q},{k})");
                }
                if main {
                    assert!(general, "thm-main => thm-general failed at ({p},{q},{k})");
                }
                if general {
                    let nm = fourier::neumann_margin(&ep, 201).unwrap();
                    assert!(
                        nm.margin > 0.0,
                        "thm-general => neumann failed at ({p},{q},{k}): margin {}",
                        nm.margin
                    );
                    neumann_checked += 1;
                }
                checked += 1;
            }
        }
    }
    finish(
        "08 proof-chain",
        start,
        600.0,
        &format!("implications held at all {checked} grid points ({neumann_checked} Neumann certificates at M=201)"),
    );
}

#[test]
fn criterion_09_basis_expansion_convergence() {
    let start = Instant::now();
    let ep = params(2.0, 2.0, 0.5);
    let coeffs = SineCoefficients::compute(&ep, 201).unwrap();
    let u = GridFunction::from_fn(1024, 2.0, |x| x * (1.0 - x)).unwrap();
    let mut prev = f64::INFINITY;
    let mut last = f64::NAN;
    for n_exp in [4usize, 8, 16, 32] {
        let exp = operator::expand_in_basis(&u, &coeffs, n_exp).unwrap();
        assert!(
            exp.residual_norm < prev,
            "residual not decreasing at N_exp={n_exp}: {} (prev {prev})",
            exp.residual_norm
        );
        prev = exp.residual_norm;
        last = exp.residual_norm;
    }
    assert!(last < 0.01, "residual at N_exp=32: {last}");
    finish(
        "09 basis-expansion",
        start,
        60.0,
        &format!("residual strictly decreasing over N_exp=4,8,16,32; final {last:.2e}"),
    );
}

#[test]
fn criterion_10_half_period_limit_endpoints() {
    let start = Instant::now();
    let near_one = ExponentPair::symmetric(1.001).unwrap().half_period();
    assert!((near_one - 2.0).abs() < 0.05, "pi at r=1.001: {near_one}");
    let near_inf = ExponentPair::symmetric(1000.0).unwrap().half_period();
    assert!((near_inf - 4.0).abs() < 0.05, "pi at r=1000: {near_inf}");
    // The closed form also agrees with direct quadrature at the near end.
    let e = ExponentPair::symmetric(1.001).unwrap();
    let quad = trig::pi_pq_quadrature(&e, &Tolerance::default());
    assert!((quad.value - near_one).abs() < 1e-8 * near_one);
    finish(
        "10 half-period-limits",
        start,
        5.0,
        &format!("pi(r=1.001) = {near_one:.4} (-> 2), pi(r=1000) = {near_inf:.4} (-> 4)"),
    );
}
