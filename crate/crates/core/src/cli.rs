//! Command-line front end.
//!
//! Exit codes: 0 when everything evaluated holds, 1 when an identity or
//! inequality is violated, 2 for usage, parse, domain or I/O errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::frac::{caputo_series, frac_sum_series, FractionalOrder};
use crate::grid::GridFunction;
use crate::harness::io::{emit, render_records};
use crate::harness::{
    identity_case, inequality_trial, read_grid, render, run_identity_suite, run_inequality_suite, GridFormat,
    IdentitySuite, InequalityConfig, InequalitySuite, Record, ReportFormat, SuiteConfig,
};
use crate::ineq::{
    avg_sobolev_report, opial_corollary_25, opial_report, ostrowski_report, poincare_report, sobolev_report,
    Conjugate, GVariant, InequalityReport, OpialParams,
};
use crate::scalar::{parse_rational, Backend, Rational, Real, TolerancePolicy};
use crate::taylor::{remainder_bound, taylor_extended, taylor_integer};

#[derive(Debug, Parser)]
#[command(
    name = "nablafrac",
    version,
    about = "Discrete nabla fractional sums, Caputo differences, Taylor formulas and inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fractional sum ∇_a^{-ν} f at --t, or on [a, hi] without --t.
    EvalSum(Opts),
    /// Caputo-like difference ∇_{a*}^{μ} f at --t, or on [a, hi] without --t.
    EvalCaputo(Opts),
    /// Taylor representation of ∇^p f(t) about --a (integer --mu uses the integer formula).
    Taylor(Opts),
    /// Remainder bound of the fractional Taylor formula.
    Bound(Opts),
    /// Run a randomized identity or inequality suite.
    Verify {
        /// exponents | duality | nabla-of-sum | taylor | taylor-extended | kernel-closed-form |
        /// rising-sum | power-rule | gamma-quotient, or any inequality name
        suite: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Evaluate one inequality on --input, or run its randomized suite.
    Ineq {
        /// opial | opial-25 | ostrowski | poincare | sobolev | avg-sobolev
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Debug, Args)]
struct Opts {
    /// Grid file (`t,value` CSV, or JSON `{"lo":..,"values":[..]}`)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<i64>,
    /// Order μ, e.g. 5/2 or 2.5
    #[arg(long, value_parser = parse_order)]
    mu: Option<FractionalOrder>,
    /// Order ν of a fractional sum
    #[arg(long, value_parser = parse_order)]
    nu: Option<FractionalOrder>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, value_parser = parse_number)]
    gamma: Option<Rational>,
    #[arg(long, value_parser = parse_number)]
    delta: Option<Rational>,
    /// Norm exponent(s), comma separated
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    r: Vec<Rational>,
    /// Ascending orders for avg-sobolev, comma separated
    #[arg(long, value_delimiter = ',', value_parser = parse_order)]
    mu_list: Vec<FractionalOrder>,
    /// Weight grid C (repeat once per order for avg-sobolev); defaults to 1
    #[arg(long)]
    c_input: Vec<PathBuf>,
    /// Weight grid D for opial; defaults to 1
    #[arg(long)]
    d_input: Option<PathBuf>,
    #[arg(long, default_value = "exact")]
    backend: Backend,
    /// Master seed of a suite run
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replay the single trial with this derived seed
    #[arg(long)]
    trial_seed: Option<u64>,
    /// Suite size (default 200 for identities, 1000 for inequalities)
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value = "table", value_parser = parse_format)]
    format: ReportFormat,
    #[arg(long, default_value = "paper")]
    g_variant: GVariant,
    /// Use C ≡ D ≡ 1 in randomized suites
    #[arg(long)]
    unit_weights: bool,
    /// Relative tolerance for float comparisons
    #[arg(long, default_value_t = 1e-9)]
    rel_eps: f64,
    /// Absolute tolerance for float comparisons
    #[arg(long, default_value_t = 1e-12)]
    abs_eps: f64,
    /// Write output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_number(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> std::result::Result<FractionalOrder, String> {
    FractionalOrder::new(parse_number(s)?).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Param(format!("--{flag} is required")))
}

fn load(path: &Path) -> Result<GridFunction<Rational>> {
    read_grid(path, GridFormat::from_path(path))
}

fn input(opts: &Opts) -> Result<GridFunction<Rational>> {
    load(opts.input.as_deref().ok_or_else(|| Error::Param("--input is required".into()))?)
}

fn out(opts: &Opts, text: &str) -> Result<()> {
    emit(text, opts.output.as_deref())
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::EvalSum(opts) => eval_series(&opts, Operator::Sum),
        Command::EvalCaputo(opts) => eval_series(&opts, Operator::Caputo),
        Command::Taylor(opts) => match opts.backend {
            Backend::Exact => taylor::<Rational>(&opts),
            Backend::Float => taylor::<f64>(&opts),
        },
        Command::Bound(opts) => match opts.backend {
            Backend::Exact => bound::<Rational>(&opts),
            Backend::Float => bound::<f64>(&opts),
        },
        Command::Verify { suite, opts } => {
            if let Ok(s) = suite.parse::<IdentitySuite>() {
                return verify_identity(s, &opts);
            }
            let s = suite.parse::<InequalitySuite>().map_err(|_| {
                let mut names: Vec<_> = IdentitySuite::ALL.iter().map(|s| s.name()).collect();
                names.extend(InequalitySuite::ALL.iter().map(|s| s.name()));
                Error::Param(format!("unknown suite {suite:?} (expected one of {})", names.join("|")))
            })?;
            verify_inequality(s, &opts)
        }
        Command::Ineq { name, opts } => {
            let s: InequalitySuite = name.parse()?;
            if opts.input.is_some() {
                match opts.backend {
                    Backend::Exact => ineq_single::<Rational>(s, &opts),
                    Backend::Float => ineq_single::<f64>(s, &opts),
                }
            } else {
                verify_inequality(s, &opts)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Operator {
    Sum,
    Caputo,
}

fn eval_series(opts: &Opts, op: Operator) -> Result<bool> {
    match opts.backend {
        Backend::Exact => eval_series_in::<Rational>(opts, op),
        Backend::Float => eval_series_in::<f64>(opts, op),
    }
}

fn eval_series_in<R: Real>(opts: &Opts, op: Operator) -> Result<bool> {
    let f = input(opts)?.to_backend::<R>();
    let (name, order, order_flag) = match op {
        Operator::Sum => ("eval-sum", required(&opts.nu, "nu")?, "nu"),
        Operator::Caputo => ("eval-caputo", required(&opts.mu, "mu")?, "mu"),
    };
    let a = match (opts.a, op) {
        (Some(a), _) => a,
        (None, Operator::Sum) => f.lo(),
        (None, Operator::Caputo) => f.lo() + order.ceil() as i64,
    };
    let hi = opts.t.unwrap_or(f.hi());
    let series = match op {
        Operator::Sum => frac_sum_series(&f, a, &order, hi)?,
        Operator::Caputo => caputo_series(&f, a, &order, hi)?,
    };
    let text = match (opts.t, opts.format) {
        (Some(t), ReportFormat::Table) => format!("{}\n", series.get(t)?.to_scalar()),
        (Some(t), ReportFormat::Csv) => format!("t,value\n{t},{}\n", series.get(t)?.to_scalar()),
        (Some(t), ReportFormat::Json) => render(
            &Record::new()
                .with("operation", name)
                .with("a", a)
                .with(order_flag, order.to_string())
                .with("t", t)
                .with("backend", R::BACKEND)
                .with("value", series.get(t)?.to_scalar()),
            ReportFormat::Json,
        )?,
        (None, format) => render_series(name, a, order_flag, &order, &series, format)?,
    };
    out(opts, &text)?;
    Ok(true)
}

fn render_series<R: Real>(
    name: &str,
    a: i64,
    order_flag: &str,
    order: &FractionalOrder,
    series: &GridFunction<R>,
    format: ReportFormat,
) -> Result<String> {
    Ok(match format {
        ReportFormat::Csv => crate::harness::io::grid_to_csv(series),
        ReportFormat::Table => series.iter().map(|(t, v)| format!("{t:>6}  {}\n", v.to_scalar())).collect(),
        ReportFormat::Json => render(
            &Record::new()
                .with("operation", name)
                .with("a", a)
                .with(order_flag, order.to_string())
                .with("backend", R::BACKEND)
                .with("lo", series.lo())
                .with("values", series.values().iter().map(R::to_scalar).collect::<Vec<_>>()),
            ReportFormat::Json,
        )?,
    })
}

/// Evaluation points: `--t`, or every admissible `t` up to the end of the grid.
fn points(opts: &Opts, lo: i64, f_hi: i64) -> Vec<i64> {
    match opts.t {
        Some(t) => vec![t],
        None => (lo..=f_hi).collect(),
    }
}

fn taylor<R: Real>(opts: &Opts) -> Result<bool> {
    let f = input(opts)?.to_backend::<R>();
    let mu = required(&opts.mu, "mu")?;
    let p = opts.p.unwrap_or(0);
    let m = mu.ceil();
    let a = opts.a.unwrap_or(f.lo() + m as i64 - 1);
    let mut rows = Vec::new();
    let mut all_hold = true;
    for t in points(opts, a + m as i64, f.hi()) {
        let exp = if mu.is_integer() {
            if p != 0 {
                return Err(Error::Param("integer-order Taylor formula takes no --p".into()));
            }
            taylor_integer(&f, a, m, t)?
        } else {
            taylor_extended(&f, a, &mu, p, t)?
        };
        let defect = exp.defect();
        all_hold &= R::BACKEND == Backend::Float || defect.is_zero();
        rows.push(
            Record::new()
                .with("t", t)
                .with("poly_part", exp.poly_part.to_scalar())
                .with("remainder", exp.remainder.to_scalar())
                .with("total", exp.total.to_scalar())
                .with("direct", exp.direct.to_scalar())
                .with("defect", defect.to_scalar()),
        );
    }
    out(opts, &render_rows(&rows, opts.format)?)?;
    Ok(all_hold)
}

fn bound<R: Real>(opts: &Opts) -> Result<bool> {
    let f = input(opts)?.to_backend::<R>();
    let mu = required(&opts.mu, "mu")?;
    let p = opts.p.unwrap_or(0);
    let m = mu.ceil();
    let a = opts.a.unwrap_or(f.lo() + m as i64 - 1);
    let tol = TolerancePolicy::new(opts.rel_eps, opts.abs_eps)?;
    let mut rows = Vec::new();
    let mut all_hold = true;
    for t in points(opts, a + m as i64, f.hi()) {
        let rb = remainder_bound(&f, a, &mu, p, t)?;
        let holds = rb.holds() || (R::BACKEND == Backend::Float && tol.close(rb.lhs.to_f64(), rb.rhs.to_f64()));
        all_hold &= holds;
        rows.push(
            Record::new()
                .with("t", t)
                .with("lhs", rb.lhs.to_scalar())
                .with("rhs", rb.rhs.to_scalar())
                .with("coefficient", rb.coefficient.to_scalar())
                .with("max_caputo", rb.max_caputo.to_scalar())
                .with("holds", holds),
        );
    }
    out(opts, &render_rows(&rows, opts.format)?)?;
    Ok(all_hold)
}

/// A single record renders as key/value pairs; several render as columns.
fn render_rows(rows: &[Record], format: ReportFormat) -> Result<String> {
    match rows {
        [one] => render(one, format),
        _ => render_records(rows, format),
    }
}

fn suite_config(opts: &Opts, default_trials: u64) -> Result<SuiteConfig> {
    Ok(SuiteConfig {
        trials: opts.trials.unwrap_or(default_trials),
        master_seed: opts.seed,
        backend: opts.backend,
        tolerance: TolerancePolicy::new(opts.rel_eps, opts.abs_eps)?,
    })
}

fn verify_identity(suite: IdentitySuite, opts: &Opts) -> Result<bool> {
    let cfg = suite_config(opts, 200)?;
    if let Some(seed) = opts.trial_seed {
        return replay_identity(suite, seed, opts);
    }
    let result = run_identity_suite(suite, &cfg)?;
    out(opts, &render(&result, opts.format)?)?;
    Ok(result.passed())
}

fn replay_identity(suite: IdentitySuite, seed: u64, opts: &Opts) -> Result<bool> {
    fn rows<R: Real>(suite: IdentitySuite, seed: u64) -> Result<(Vec<Record>, bool)> {
        let case = identity_case::<R>(suite, seed)?;
        let tol = TolerancePolicy::default();
        let mut ok = true;
        let rows = case
            .pairs
            .iter()
            .map(|(label, l, r)| {
                let equal = match R::BACKEND {
                    Backend::Exact => l == r,
                    Backend::Float => tol.close(l.to_f64(), r.to_f64()),
                };
                ok &= equal;
                Record::new()
                    .with("context", &case.context)
                    .with("check", label)
                    .with("lhs", l.to_scalar())
                    .with("rhs", r.to_scalar())
                    .with("equal", equal)
            })
            .collect();
        Ok((rows, ok))
    }
    let (rows, ok) = match opts.backend {
        Backend::Exact => rows::<Rational>(suite, seed)?,
        Backend::Float => rows::<f64>(suite, seed)?,
    };
    out(opts, &render_rows(&rows, opts.format)?)?;
    Ok(ok)
}

fn conjugate(opts: &Opts) -> Result<Conjugate> {
    let one = Rational::from_integer(1.into());
    match (&opts.gamma, &opts.delta) {
        (None, None) => Ok(Conjugate::quadratic()),
        (Some(g), None) => Conjugate::from_gamma(g.clone()),
        (None, Some(d)) if *d > one => Conjugate::from_gamma(d / (d - &one)),
        (None, Some(d)) => Err(Error::Param(format!("delta={d} must exceed 1"))),
        (Some(g), Some(d)) => Conjugate::new(g.clone(), d.clone())
            .or_else(|_| Conjugate::approx(g.clone(), d.clone(), &TolerancePolicy::default())),
    }
}

fn inequality_config(opts: &Opts) -> Result<InequalityConfig> {
    Ok(InequalityConfig {
        mu: opts.mu.clone(),
        mus: (!opts.mu_list.is_empty()).then(|| opts.mu_list.clone()),
        p: opts.p.unwrap_or(0),
        exps: conjugate(opts)?,
        rs: if opts.r.is_empty() {
            vec![Rational::from_integer(2.into())]
        } else {
            opts.r.clone()
        },
        g_variant: opts.g_variant,
        unit_weights: opts.unit_weights,
        ..Default::default()
    })
}

fn verify_inequality(suite: InequalitySuite, opts: &Opts) -> Result<bool> {
    let cfg = suite_config(opts, 1000)?;
    let icfg = inequality_config(opts)?;
    if let Some(seed) = opts.trial_seed {
        let reports = inequality_trial(suite, &icfg, opts.backend, seed)?;
        let ok = reports.iter().all(|r| r.holds_under(&cfg.tolerance));
        out(opts, &render_reports(&reports, opts.format)?)?;
        return Ok(ok);
    }
    let result = run_inequality_suite(suite, &cfg, &icfg)?;
    out(opts, &render(&result, opts.format)?)?;
    Ok(result.passed())
}

fn render_reports(reports: &[InequalityReport], format: ReportFormat) -> Result<String> {
    match reports {
        [one] => render(one, format),
        _ => render(&reports.to_vec(), format),
    }
}

fn weight_or_unit<R: Real>(path: Option<&PathBuf>, lo: i64, hi: i64) -> Result<GridFunction<R>> {
    match path {
        Some(p) => Ok(load(p)?.to_backend::<R>()),
        None => GridFunction::constant(lo, hi.max(lo), R::one()),
    }
}

fn ineq_single<R: Real>(suite: InequalitySuite, opts: &Opts) -> Result<bool> {
    let f = input(opts)?.to_backend::<R>();
    let icfg = inequality_config(opts)?;
    let p = icfg.p;
    let tol = TolerancePolicy::new(opts.rel_eps, opts.abs_eps)?;
    let reports: Vec<InequalityReport> = match suite {
        InequalitySuite::Opial25 => vec![opial_corollary_25(&f, opts.t.unwrap_or(f.hi()), opts.g_variant)?],
        InequalitySuite::AvgSobolev => {
            if opts.mu_list.is_empty() {
                return Err(Error::Param("--mu-list is required for avg-sobolev".into()));
            }
            let mk = opts.mu_list.iter().map(|m| m.ceil()).max().unwrap_or(1) as i64;
            let a = opts.a.unwrap_or(f.lo() + mk - 1);
            let b = opts.b.unwrap_or(f.hi());
            let cs = (0..opts.mu_list.len())
                .map(|l| weight_or_unit::<R>(opts.c_input.get(l).or(opts.c_input.first()), a + 1, b))
                .collect::<Result<Vec<_>>>()?;
            icfg.rs
                .iter()
                .map(|r| avg_sobolev_report(&f, a, b, &opts.mu_list, &cs, r))
                .collect::<Result<_>>()?
        }
        _ => {
            let mu = required(&opts.mu, "mu")?;
            let m = mu.ceil() as i64;
            let a = opts.a.unwrap_or(f.lo() + m - 1);
            match suite {
                InequalitySuite::Opial => {
                    let t = opts.t.unwrap_or(f.hi());
                    let c = weight_or_unit::<R>(opts.c_input.first(), a + 1, t)?;
                    let d = weight_or_unit::<R>(opts.d_input.as_ref(), a + m, t)?;
                    let params = OpialParams::new(mu, p, icfg.exps.clone(), c, d)?;
                    vec![opial_report(&f, a, t, &params, opts.g_variant)?]
                }
                InequalitySuite::Ostrowski => vec![ostrowski_report(&f, a, opts.b.unwrap_or(f.hi()), &mu, p)?],
                InequalitySuite::Poincare => {
                    vec![poincare_report(&f, a, opts.b.unwrap_or(f.hi()), &mu, p, &icfg.exps)?]
                }
                _ => icfg
                    .rs
                    .iter()
                    .map(|r| sobolev_report(&f, a, opts.b.unwrap_or(f.hi()), &mu, p, &icfg.exps, r))
                    .collect::<Result<_>>()?,
            }
        }
    };
    out(opts, &render_reports(&reports, opts.format)?)?;
    Ok(reports.iter().all(|r| r.holds_under(&tol)))
}
