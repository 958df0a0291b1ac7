//! Command-line front end: evaluation tables, criterion reports, modulus
//! threshold search, Fourier coefficient tables, and basis expansion.
//!
//! Exit codes: 0 success, 1 usage/domain error, 2 criterion violated.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gjef::analysis;
use gjef::basis::{self, Criterion, KStar};
use gjef::elliptic::{self, EllipticKind, EllipticParams};
use gjef::fourier::{self, SineCoefficients};
use gjef::hyper::{self, HypKind};
use gjef::operator::{self, GridFunction};
use gjef::trig::{self, TrigKind};
use gjef::{ExponentPair, Tolerance};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

mod grid;
mod output;

use grid::Grid;
use output::{OutputFormat, Sink};

#[derive(Parser)]
#[command(
    name = "gjef",
    version,
    about = "Generalized trigonometric, hyperbolic and Jacobian elliptic functions,\n\
             with verification of the basis criteria for {sn_pq(2nK x, k)}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at scalar parameters (prints plain numbers).
    Eval(EvalArgs),
    /// Evaluate over parameter grids and emit a CSV/JSON table.
    Table(TableArgs),
    /// Check a basis criterion; exits 0 when satisfied, 2 when violated.
    Check(CheckArgs),
    /// Find the modulus threshold of a criterion by bisection.
    Kstar(KstarArgs),
    /// Fourier sine coefficients tau_m with their bounds.
    Fourier(FourierArgs),
    /// Expand a sampled function in the basis {f_n}.
    Expand(ExpandArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sn,
    Cn,
    Dn,
    #[value(name = "K", alias = "k")]
    K,
    Pi,
    Sandwich,
}

impl Func {
    fn needs_x(self) -> bool {
        !matches!(self, Func::K | Func::Pi | Func::Sandwich)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    ThmMain,
    CorMain,
    #[value(name = "cor-13")]
    Cor13,
    ThmGeneral,
    Neumann,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Criterion {
        match c {
            CriterionArg::ThmMain => Criterion::ThmMain,
            CriterionArg::CorMain => Criterion::CorMain,
            CriterionArg::Cor13 => Criterion::Cor13,
            CriterionArg::ThmGeneral => Criterion::ThmGeneral,
            CriterionArg::Neumann => Criterion::NeumannDirect,
        }
    }
}

#[derive(Args)]
struct CommonOut {
    /// Output file (stdout if omitted; with --out only a summary line is
    /// printed).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for structured results.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    func: Func,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    /// Modulus (elliptic functions and K).
    #[arg(long, default_value_t = 0.0)]
    k: f64,
    /// Abscissa, scalar or start:stop:count.
    #[arg(long)]
    x: Option<Grid>,
    /// Absolute quadrature tolerance override.
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    func: Func,
    /// First exponent, scalar or start:stop:count.
    #[arg(long, default_value = "2")]
    p: Grid,
    /// Second exponent, scalar or start:stop:count.
    #[arg(long, default_value = "2")]
    q: Grid,
    /// Modulus grid.
    #[arg(long, default_value = "0")]
    k: Grid,
    /// Abscissa grid (functions of x only).
    #[arg(long)]
    x: Option<Grid>,
    /// Combined exponent grid for --func sandwich (pairs (r', r)).
    #[arg(long)]
    r: Option<Grid>,
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    criterion: CriterionArg,
    #[arg(long, default_value = "2")]
    p: Grid,
    #[arg(long, default_value = "2")]
    q: Grid,
    #[arg(long, default_value = "0")]
    k: Grid,
    /// Coefficient cutoff for the neumann criterion (odd).
    #[arg(long = "M", default_value_t = basis::DEFAULT_M_CUTOFF)]
    m_cutoff: usize,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct KstarArgs {
    #[arg(long, value_enum)]
    criterion: CriterionArg,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long = "M", default_value_t = basis::DEFAULT_M_CUTOFF)]
    m_cutoff: usize,
}

#[derive(Args)]
struct FourierArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    k: f64,
    /// Coefficient cutoff.
    #[arg(long = "M", default_value_t = basis::DEFAULT_M_CUTOFF)]
    m_cutoff: usize,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    k: f64,
    /// Norm exponent alpha.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Grid resolution (power of two, at least 64).
    #[arg(long = "N", default_value_t = 1024)]
    n_grid: usize,
    /// Number of basis functions in the expansion.
    #[arg(long)]
    n_exp: usize,
    #[arg(long = "M", default_value_t = basis::DEFAULT_M_CUTOFF)]
    m_cutoff: usize,
    /// Two-column CSV (x, u(x)), resampled to the midpoint grid.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: CommonOut,
}

fn main() -> ExitCode {
    // Usage errors exit 1 (clap's default of 2 is reserved for violated
    // criteria).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            use clap::error::ErrorKind;
            let benign = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };

    if let Ok(threads) = std::env::var("GJEF_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }

    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> gjef::Result<ExitCode> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Table(args) => cmd_table(args),
        Command::Check(args) => cmd_check(args),
        Command::Kstar(args) => cmd_kstar(args),
        Command::Fourier(args) => cmd_fourier(args),
        Command::Expand(args) => cmd_expand(args),
    }
}

fn tolerance(abs_tol: f64) -> gjef::Result<Tolerance> {
    Tolerance::new(abs_tol, abs_tol, 20)
}

fn eval_one(func: Func, p: f64, q: f64, k: f64, x: f64, tol: &Tolerance) -> gjef::Result<f64> {
    let pair = ExponentPair::new(p, q)?;
    match func {
        Func::Pi => Ok(pair.half_period()),
        Func::K => Ok(EllipticParams::with_tolerance(pair, k, tol)?.quarter_period()),
        Func::Sin => trig::eval_trig(&pair, TrigKind::Sin, x),
        Func::Cos => trig::eval_trig(&pair, TrigKind::Cos, x),
        Func::Tan => trig::eval_trig(&pair, TrigKind::Tan, x),
        Func::Sinh => hyper::eval_hyp(&pair, HypKind::Sinh, x),
        Func::Cosh => hyper::eval_hyp(&pair, HypKind::Cosh, x),
        Func::Tanh => hyper::eval_hyp(&pair, HypKind::Tanh, x),
        Func::Sn | Func::Cn | Func::Dn => {
            let ep = EllipticParams::with_tolerance(pair, k, tol)?;
            let kind = match func {
                Func::Sn => EllipticKind::Sn,
                Func::Cn => EllipticKind::Cn,
                _ => EllipticKind::Dn,
            };
            elliptic::eval_elliptic(&ep, kind, x)
        }
        Func::Sandwich => Err(gjef::Error::domain(
            "sandwich is a table-only function (use `table --func sandwich --r ... --k ...`)",
        )),
    }
}

fn cmd_eval(args: EvalArgs) -> gjef::Result<ExitCode> {
    let tol = tolerance(args.abs_tol)?;
    let xs: Vec<f64> = match &args.x {
        Some(g) => g.values(),
        None => {
            if args.func.needs_x() {
                return Err(gjef::Error::domain("this function requires --x"));
            }
            vec![0.0]
        }
    };
    for &x in &xs {
        let v = eval_one(args.func, args.p, args.q, args.k, x, &tol)?;
        println!("{v:.17e}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableRow {
    p: f64,
    q: f64,
    k: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    value: f64,
}

#[derive(Serialize)]
struct SandwichRow {
    r: f64,
    k: f64,
    lower: f64,
    value: f64,
    upper_tanh: f64,
    upper_alg: f64,
}

fn cmd_table(args: TableArgs) -> gjef::Result<ExitCode> {
    let sink = Sink::new(args.out.out.as_deref(), args.out.format);

    if matches!(args.func, Func::Sandwich) {
        let rs = args
            .r
            .as_ref()
            .ok_or_else(|| gjef::Error::domain("--func sandwich requires --r"))?
            .values();
        let ks = args.k.values();
        let mut points = Vec::new();
        for &r in &rs {
            for &k in &ks {
                points.push((r, k));
            }
        }
        let rows: Vec<gjef::Result<SandwichRow>> = points
            .par_iter()
            .map(|&(r, k)| {
                let b = analysis::sandwich(r, k)?;
                Ok(SandwichRow {
                    r,
                    k,
                    lower: b.lower,
                    value: b.value,
                    upper_tanh: b.upper_tanh,
                    upper_alg: b.upper_alg,
                })
            })
            .collect();
        let rows = rows.into_iter().collect::<gjef::Result<Vec<_>>>()?;
        let mut csv = String::from("r,k,lower,value,upper_tanh,upper_alg\n");
        for row in &rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                output::csv_num(row.r),
                output::csv_num(row.k),
                output::csv_num(row.lower),
                output::csv_num(row.value),
                output::csv_num(row.upper_tanh),
                output::csv_num(row.upper_alg)
            );
        }
        sink.emit(&rows, &csv, &format!("{} sandwich rows", rows.len()))?;
        return Ok(ExitCode::SUCCESS);
    }

    let tol = tolerance(args.abs_tol)?;
    let xs: Vec<Option<f64>> = match (&args.x, args.func.needs_x()) {
        (Some(g), true) => g.values().into_iter().map(Some).collect(),
        (None, true) => return Err(gjef::Error::domain("this function requires --x")),
        (_, false) => vec![None],
    };
    let mut points = Vec::new();
    for &p in &args.p.values() {
        for &q in &args.q.values() {
            for &k in &args.k.values() {
                for &x in &xs {
                    points.push((p, q, k, x));
                }
            }
        }
    }
    let rows: Vec<gjef::Result<TableRow>> = points
        .par_iter()
        .map(|&(p, q, k, x)| {
            let value = eval_one(args.func, p, q, k, x.unwrap_or(0.0), &tol)?;
            Ok(TableRow { p, q, k, x, value })
        })
        .collect();
    let rows = rows.into_iter().collect::<gjef::Result<Vec<_>>>()?;

    let with_x = rows.first().is_some_and(|r| r.x.is_some());
    let mut csv = String::from(if with_x {
        "p,q,k,x,value\n"
    } else {
        "p,q,k,value\n"
    });
    for row in &rows {
        match row.x {
            Some(x) => {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    output::csv_num(row.p),
                    output::csv_num(row.q),
                    output::csv_num(row.k),
                    output::csv_num(x),
                    output::csv_num(row.value)
                );
            }
            None => {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    output::csv_num(row.p),
                    output::csv_num(row.q),
                    output::csv_num(row.k),
                    output::csv_num(row.value)
                );
            }
        }
    }
    sink.emit(&rows, &csv, &format!("{} table rows", rows.len()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> gjef::Result<ExitCode> {
    let criterion: Criterion = args.criterion.into();
    let sink = Sink::new(args.out.out.as_deref(), args.out.format);
    let mut points = Vec::new();
    for &p in &args.p.values() {
        for &q in &args.q.values() {
            for &k in &args.k.values() {
                points.push((p, q, k));
            }
        }
    }
    let reports: Vec<gjef::Result<basis::CheckReport>> = points
        .par_iter()
        .map(|&(p, q, k)| {
            let ep = EllipticParams::new(ExponentPair::new(p, q)?, k)?;
            basis::check(&ep, criterion, args.m_cutoff)
        })
        .collect();
    let reports = reports.into_iter().collect::<gjef::Result<Vec<_>>>()?;

    let mut csv = String::from("criterion,p,q,k,lhs,rhs,satisfied,applicable,margin,m_cutoff\n");
    for r in &reports {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            r.criterion,
            output::csv_num(r.p),
            output::csv_num(r.q),
            output::csv_num(r.k),
            output::csv_num(r.lhs),
            output::csv_num(r.rhs),
            r.satisfied,
            r.applicable,
            output::csv_num(r.margin),
            r.m_cutoff.map_or(String::new(), |m| m.to_string())
        );
    }
    let all_ok = reports.iter().all(|r| r.satisfied);
    let summary = format!(
        "{criterion}: {}/{} points satisfied",
        reports.iter().filter(|r| r.satisfied).count(),
        reports.len()
    );
    sink.emit(&reports, &csv, &summary)?;
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_kstar(args: KstarArgs) -> gjef::Result<ExitCode> {
    let pair = ExponentPair::new(args.p, args.q)?;
    let result = basis::k_star(&pair, args.criterion.into(), args.m_cutoff)?;
    match result {
        KStar::Threshold(t) => println!("{t:.6}"),
        KStar::NeverViolated => println!("never-violated"),
        KStar::ViolatedAtZero => println!("violated-at-zero"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FourierRow {
    m: usize,
    tau: f64,
    bound: f64,
}

fn cmd_fourier(args: FourierArgs) -> gjef::Result<ExitCode> {
    let ep = EllipticParams::new(ExponentPair::new(args.p, args.q)?, args.k)?;
    let coeffs = SineCoefficients::compute(&ep, args.m_cutoff)?;
    let mut rows = Vec::new();
    for m in (1..=coeffs.m_max()).step_by(2) {
        rows.push(FourierRow {
            m,
            tau: coeffs.tau(m)?,
            bound: fourier::tau_bound(&ep, m)?,
        });
    }
    let mut csv = String::from("m,tau_m,bound_m\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{}",
            row.m,
            output::csv_num(row.tau),
            output::csv_num(row.bound)
        );
    }
    let sink = Sink::new(args.out.out.as_deref(), args.out.format);
    sink.emit(
        &rows,
        &csv,
        &format!("{} odd coefficients up to M={}", rows.len(), coeffs.m_max()),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ExpandOutput {
    p: f64,
    q: f64,
    k: f64,
    alpha: f64,
    n: usize,
    n_exp: usize,
    coefficients: Vec<f64>,
    residual_norm: f64,
    iterations: usize,
}

/// Parse a two-column CSV of (x, u(x)) points; a non-numeric first line is
/// treated as a header.
fn read_samples(path: &std::path::Path) -> gjef::Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| gjef::Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let a = cols.next().map(str::trim);
        let b = cols.next().map(str::trim);
        match (
            a.and_then(|s| s.parse::<f64>().ok()),
            b.and_then(|s| s.parse::<f64>().ok()),
        ) {
            (Some(x), Some(u)) => points.push((x, u)),
            _ if idx == 0 => continue, // header row
            _ => {
                return Err(gjef::Error::Parse(format!(
                    "{}:{}: expected two numeric columns",
                    path.display(),
                    idx + 1
                )))
            }
        }
    }
    if points.len() < 2 {
        return Err(gjef::Error::Parse(format!(
            "{}: need at least two sample points",
            path.display()
        )));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points)
}

/// Linear interpolation of scattered (x, u) data onto the midpoint grid.
fn resample(points: &[(f64, f64)], n: usize, alpha: f64) -> gjef::Result<GridFunction> {
    GridFunction::from_fn(n, alpha, |x| {
        let idx = points.partition_point(|p| p.0 < x);
        if idx == 0 {
            return points[0].1;
        }
        if idx >= points.len() {
            return points[points.len() - 1].1;
        }
        let (x0, u0) = points[idx - 1];
        let (x1, u1) = points[idx];
        if x1 == x0 {
            u0
        } else {
            u0 + (x - x0) / (x1 - x0) * (u1 - u0)
        }
    })
}

fn cmd_expand(args: ExpandArgs) -> gjef::Result<ExitCode> {
    let ep = EllipticParams::new(ExponentPair::new(args.p, args.q)?, args.k)?;
    let coeffs = SineCoefficients::compute(&ep, args.m_cutoff)?;
    let points = read_samples(&args.input)?;
    let u = resample(&points, args.n_grid, args.alpha)?;
    let expansion = operator::expand_in_basis(&u, &coeffs, args.n_exp)?;
    let out = ExpandOutput {
        p: args.p,
        q: args.q,
        k: args.k,
        alpha: args.alpha,
        n: args.n_grid,
        n_exp: args.n_exp,
        coefficients: expansion.coefficients,
        residual_norm: expansion.residual_norm,
        iterations: expansion.neumann_iterations,
    };
    let json = serde_json::to_string_pretty(&out)
        .map_err(|e| gjef::Error::Parse(format!("json encoding failed: {e}")))?;
    let summary = format!(
        "expansion of {} in {} basis functions, residual {:.6e}",
        args.input.display(),
        args.n_exp,
        out.residual_norm
    );
    let sink = Sink::new(args.out.out.as_deref(), OutputFormat::Json);
    sink.emit_raw(&json, &summary)?;
    Ok(ExitCode::SUCCESS)
}
