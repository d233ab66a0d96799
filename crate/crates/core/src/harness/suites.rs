//! Randomized identity and inequality suites.
//!
//! Trial `i` of a run draws everything from its own seed
//! [`trial_seed`]`(master_seed, i)`, so results do not depend on how trials
//! are scheduled across threads, and any failing trial can be replayed alone
//! from the seed printed in its message.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{gen_function, random_eighths, random_int, random_order, rng_from, trial_seed, FunctionSpec};
use crate::error::{Error, Result};
use crate::frac::{delta_frac_sum, frac_sum_series, FractionalOrder, KernelRow};
use crate::grid::{binomial, nabla, GridFunction};
use crate::ineq::{
    avg_sobolev_report, opial_corollary_25, opial_report, ostrowski_report, poincare_report, sobolev_report,
    Conjugate, GVariant, InequalityReport, OpialParams,
};
use crate::scalar::{int, Backend, Rational, Real, Scalar, TolerancePolicy};
use crate::taylor::{
    kernel_sum_closed_form, rising_poly, sum_rising_closed_form, taylor_extended, taylor_fractional, taylor_integer,
};

const VALUE_RANGE: u32 = 9;

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                $name::ALL.iter().copied().find(|v| v.name() == s).ok_or_else(|| {
                    let names: Vec<_> = $name::ALL.iter().map(|v| v.name()).collect();
                    Error::Param(format!("unknown suite {s:?} (expected one of {})", names.join("|")))
                })
            }
        }
    };
}

named_enum! {
    /// Exact identities checked on random instances.
    IdentitySuite {
        Exponents => "exponents",
        Duality => "duality",
        NablaOfSum => "nabla-of-sum",
        Taylor => "taylor",
        TaylorExtended => "taylor-extended",
        KernelClosedForm => "kernel-closed-form",
        RisingSum => "rising-sum",
        PowerRule => "power-rule",
        GammaQuotient => "gamma-quotient",
    }
}

named_enum! {
    InequalitySuite {
        Opial => "opial",
        Opial25 => "opial-25",
        Ostrowski => "ostrowski",
        Poincare => "poincare",
        Sobolev => "sobolev",
        AvgSobolev => "avg-sobolev",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: u64,
    pub master_seed: u64,
    pub backend: Backend,
    pub tolerance: TolerancePolicy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 200,
            master_seed: 0,
            backend: Backend::Exact,
            tolerance: TolerancePolicy::default(),
        }
    }
}

impl SuiteConfig {
    pub fn new(trials: u64, master_seed: u64, backend: Backend) -> Self {
        SuiteConfig {
            trials,
            master_seed,
            backend,
            ..Default::default()
        }
    }
}

/// Inequality parameters; `None` orders are drawn per trial.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityConfig {
    pub mu: Option<FractionalOrder>,
    /// Orders for the average Sobolev suite.
    pub mus: Option<Vec<FractionalOrder>>,
    pub p: u32,
    pub exps: Conjugate,
    /// Every listed `r` is evaluated on each Sobolev / average Sobolev trial.
    pub rs: Vec<Rational>,
    pub g_variant: GVariant,
    /// `C ≡ D ≡ 1` instead of random weights.
    pub unit_weights: bool,
    /// Upper bound on the number of grid points of a generated function.
    pub max_len: i64,
}

impl Default for InequalityConfig {
    fn default() -> Self {
        InequalityConfig {
            mu: None,
            mus: None,
            p: 0,
            exps: Conjugate::quadratic(),
            rs: vec![int(2)],
            g_variant: GVariant::Paper,
            unit_weights: false,
            max_len: 40,
        }
    }
}

impl InequalityConfig {
    fn echo(&self, suite: InequalitySuite) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let order = |mu: &Option<FractionalOrder>| mu.as_ref().map_or("random".to_string(), |m| m.to_string());
        match suite {
            InequalitySuite::Opial25 => {
                out.insert("g_variant".into(), self.g_variant.to_string());
            }
            InequalitySuite::AvgSobolev => {
                let mus = self.mus.as_ref().map_or("random".to_string(), |v| {
                    v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
                });
                out.insert("mu".into(), mus);
                out.insert("r".into(), join(&self.rs));
                out.insert("unit_weights".into(), self.unit_weights.to_string());
            }
            _ => {
                out.insert("mu".into(), order(&self.mu));
                out.insert("p".into(), self.p.to_string());
                if suite != InequalitySuite::Ostrowski {
                    out.insert("gamma".into(), self.exps.gamma().to_string());
                    out.insert("delta".into(), self.exps.delta().to_string());
                }
                if suite == InequalitySuite::Sobolev {
                    out.insert("r".into(), join(&self.rs));
                }
                if suite == InequalitySuite::Opial {
                    out.insert("g_variant".into(), self.g_variant.to_string());
                    out.insert("unit_weights".into(), self.unit_weights.to_string());
                }
            }
        }
        out.insert("max_len".into(), self.max_len.to_string());
        out
    }
}

fn join(rs: &[Rational]) -> String {
    rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

/// Aggregate of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub kind: String,
    pub backend: Backend,
    pub trials: u64,
    pub master_seed: u64,
    pub version: String,
    pub params: BTreeMap<String, String>,
    /// Individual comparisons performed across all trials.
    pub checks: u64,
    pub failures: u64,
    /// Identity suites: largest `|lhs - rhs|`. Inequality suites: smallest slack.
    pub worst_slack: Scalar,
    pub failing_seeds: Vec<u64>,
    pub messages: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Outcome {
    seed: u64,
    checks: u64,
    worst: Scalar,
    failure: Option<String>,
}

/// `x` is worse than `y`: larger for defects, smaller for slacks; NaN is worst.
fn worse(x: &Scalar, y: &Scalar, larger_is_worse: bool) -> bool {
    if x.to_f64().is_nan() {
        return !y.to_f64().is_nan();
    }
    if y.to_f64().is_nan() {
        return false;
    }
    let gt = match (x.as_rational(), y.as_rational()) {
        (Some(a), Some(b)) => a > b,
        _ => x.to_f64() > y.to_f64(),
    };
    let lt = match (x.as_rational(), y.as_rational()) {
        (Some(a), Some(b)) => a < b,
        _ => x.to_f64() < y.to_f64(),
    };
    if larger_is_worse {
        gt
    } else {
        lt
    }
}

fn aggregate(
    suite: &str,
    kind: &str,
    cfg: &SuiteConfig,
    params: BTreeMap<String, String>,
    outcomes: Vec<Outcome>,
    larger_is_worse: bool,
) -> SuiteResult {
    let zero = match cfg.backend {
        Backend::Exact => Scalar::Exact(int(0)),
        Backend::Float => Scalar::Float(0.0),
    };
    let mut worst: Option<Scalar> = None;
    let mut result = SuiteResult {
        suite: suite.to_string(),
        kind: kind.to_string(),
        backend: cfg.backend,
        trials: cfg.trials,
        master_seed: cfg.master_seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        params,
        checks: 0,
        failures: 0,
        worst_slack: zero.clone(),
        failing_seeds: Vec::new(),
        messages: Vec::new(),
    };
    for o in outcomes {
        result.checks += o.checks;
        if worst.as_ref().is_none_or(|w| worse(&o.worst, w, larger_is_worse)) {
            worst = Some(o.worst);
        }
        if let Some(msg) = o.failure {
            result.failures += 1;
            result.failing_seeds.push(o.seed);
            result.messages.push(msg);
        }
    }
    result.worst_slack = worst.unwrap_or(zero);
    result
}

fn check_trials(cfg: &SuiteConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(Error::Param("trials must be at least 1".into()));
    }
    Ok(())
}

fn run_parallel(cfg: &SuiteConfig, trial: impl Fn(u64) -> Result<Outcome> + Sync) -> Result<Vec<Outcome>> {
    check_trials(cfg)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(trial_seed(cfg.master_seed, i)))
        .collect()
}

// ---------------------------------------------------------------------------
// identities

/// One randomized identity instance: a description and the `(label, lhs, rhs)`
/// pairs that must agree.
pub struct IdentityCase<R> {
    pub context: String,
    pub pairs: Vec<(String, R, R)>,
}

fn random_grid(rng: &mut impl Rng, lo: i64, hi: i64) -> GridFunction<Rational> {
    GridFunction::from_fn(lo, hi, |_| random_int(rng, VALUE_RANGE)).expect("non-empty range")
}

/// Both sides of `∇^p [(t-a)^{(k) rising}/k!] = (t-a)^{(k-p) rising}/(k-p)!`.
pub fn power_rule_sides<R: Real>(a: i64, k: u32, p: u32, t: i64) -> Result<(R, R)> {
    if k < p {
        return Err(Error::Param(format!("power rule needs k >= p (k={k}, p={p})")));
    }
    let g = GridFunction::from_fn(t - p as i64, t, |s| R::from_rational(&rising_poly(s - a, k)))?;
    Ok((nabla(&g, t, p)?, R::from_rational(&rising_poly(t - a, k - p))))
}

/// Both sides of `Γ(x+1)/Γ(x-k+1) = [Γ(x+2)/Γ(x-k+1) - Γ(x+1)/Γ(x-k)]/(k+1)`
/// with `x - k = n`, after dividing through by `Γ(k+1)`.
pub fn gamma_quotient_sides<R: Real>(n: i64, k: &Rational) -> Result<(R, R)> {
    if n < 1 || *k <= int(-1) {
        return Err(Error::Param(format!("gamma quotient needs n >= 1 and k > -1 (n={n}, k={k})")));
    }
    let x = int(n) + k;
    let k1 = k + int(1);
    let lhs = R::from_rational(&k1) * R::gamma_ratio(&(&x + int(1)), &int(n + 1), &k1)?;
    let rhs = R::gamma_ratio(&(&x + int(2)), &int(n + 1), &k1)? - R::gamma_ratio(&(&x + int(1)), &int(n), &k1)?;
    Ok((lhs, rhs))
}

fn exponents_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(-3..=3);
    let hi = a + rng.random_range(0..40);
    let f = random_grid(rng, a, hi).to_backend::<R>();
    let mu = random_order(rng, 0, 3);
    let nu = random_order(rng, 0, 3);
    let nu_mu = frac_sum_series(&frac_sum_series(&f, a, &mu, hi)?, a, &nu, hi)?;
    let mu_nu = frac_sum_series(&frac_sum_series(&f, a, &nu, hi)?, a, &mu, hi)?;
    let joint = frac_sum_series(&f, a, &mu.plus(&nu), hi)?;
    let mut pairs = Vec::new();
    for t in a..=hi {
        pairs.push((format!("nu∘mu t={t}"), nu_mu.get(t)?.clone(), joint.get(t)?.clone()));
        pairs.push((format!("mu∘nu t={t}"), mu_nu.get(t)?.clone(), joint.get(t)?.clone()));
    }
    Ok(IdentityCase {
        context: format!("a={a} hi={hi} mu={mu} nu={nu}"),
        pairs,
    })
}

fn duality_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(0..=5);
    let hi = a + rng.random_range(0..30);
    let f = random_grid(rng, a, hi).to_backend::<R>();
    let nu = random_order(rng, 0, 3);
    let nabla_side = frac_sum_series(&f, a, &nu, hi)?;
    let mut pairs = Vec::new();
    for j in 0..=hi - a {
        pairs.push((
            format!("j={j}"),
            delta_frac_sum(&f, a, &nu, j)?,
            nabla_side.get(a + j)?.clone(),
        ));
    }
    Ok(IdentityCase {
        context: format!("a={a} hi={hi} nu={nu}"),
        pairs,
    })
}

fn nabla_of_sum_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(0..=5);
    let hi = a + rng.random_range(0..30);
    let f = random_grid(rng, a, hi).to_backend::<R>();
    let nu = random_order(rng, 1, 5);
    let p = rng.random_range(1..nu.ceil());
    let reduced = nu.minus(p)?;
    // the sum vanishes below a (empty range), which ∇^p reaches near t = a
    let sum = frac_sum_series(&f, a, &nu, hi)?;
    let padded = GridFunction::try_from_fn(a - p as i64, hi, |t| {
        if t < a {
            Ok(R::zero())
        } else {
            sum.get(t).cloned()
        }
    })?;
    let target = frac_sum_series(&f, a, &reduced, hi)?;
    let mut pairs = Vec::new();
    for t in a..=hi {
        pairs.push((format!("nabla t={t}"), nabla(&padded, t, p)?, target.get(t)?.clone()));
    }
    // forward analogue at t = a + ν + j
    for j in 0..=(hi - a - p as i64).min(12) {
        let mut lhs = R::zero();
        for i in 0..=p {
            let c = binomial(p, i) * if (p - i) % 2 == 1 { -1 } else { 1 };
            lhs += &(R::from_i64(c) * delta_frac_sum(&f, a, &nu, j + i as i64)?);
        }
        pairs.push((format!("delta j={j}"), lhs, delta_frac_sum(&f, a, &reduced, j + p as i64)?));
    }
    Ok(IdentityCase {
        context: format!("a={a} hi={hi} nu={nu} p={p}"),
        pairs,
    })
}

/// Admissible random function for a Taylor-type trial with `m <= 5` and at
/// most 40 grid points.
fn taylor_function(rng: &mut impl Rng, a: i64, m: u32) -> Result<GridFunction<Rational>> {
    let b = rng.random_range(a + m as i64 + 1..=a + 40 - m as i64);
    gen_function(&FunctionSpec {
        a,
        m,
        b,
        zero_initials_from: m,
        value_range: VALUE_RANGE,
        seed: rng.random(),
    })
}

fn taylor_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(-3..=3);
    let mu = random_order(rng, 0, 5);
    let m = mu.ceil();
    let f = taylor_function(rng, a, m)?.to_backend::<R>();
    let mut pairs = Vec::new();
    for t in a + m as i64..=f.hi() {
        let frac = taylor_fractional(&f, a, &mu, t)?;
        pairs.push((format!("fractional t={t}"), frac.total, frac.direct));
        let int_form = taylor_integer(&f, a, m, t)?;
        pairs.push((format!("integer t={t}"), int_form.total, int_form.direct));
    }
    Ok(IdentityCase {
        context: format!("a={a} b={} mu={mu}", f.hi()),
        pairs,
    })
}

fn taylor_extended_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(0..=3);
    let mu = random_order(rng, 0, 5);
    let m = mu.ceil();
    let p = rng.random_range(0..m);
    let f = taylor_function(rng, a, m)?.to_backend::<R>();
    let mut pairs = Vec::new();
    for t in a + m as i64..=f.hi() {
        let ext = taylor_extended(&f, a, &mu, p, t)?;
        pairs.push((format!("p={p} t={t}"), ext.total, ext.direct));
    }
    for t in [a + m as i64, f.hi()] {
        let ext = taylor_extended(&f, a, &mu, 0, t)?;
        let frac = taylor_fractional(&f, a, &mu, t)?;
        pairs.push((format!("p=0 reduction t={t}"), ext.total, frac.total));
    }
    Ok(IdentityCase {
        context: format!("a={a} b={} mu={mu} p={p}", f.hi()),
        pairs,
    })
}

fn kernel_closed_form_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(-5..=5);
    let mu = random_order(rng, 0, 5);
    let len = rng.random_range(1..=40);
    let row = KernelRow::<R>::new(&mu, len as usize);
    let mut direct = R::zero();
    let mut pairs = Vec::new();
    for n in 1..=len {
        direct += row.weight(n);
        pairs.push((
            format!("t={}", a + n),
            direct.clone(),
            kernel_sum_closed_form(a, &mu, a + n)?,
        ));
    }
    Ok(IdentityCase {
        context: format!("a={a} mu={mu}"),
        pairs,
    })
}

fn rising_sum_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let a = rng.random_range(0..=3);
    let m = rng.random_range(1..=5u32);
    let nu = random_order(rng, 0, 5);
    let hi = a + rng.random_range(m as i64 + 1..=40);
    let row = KernelRow::<R>::new(&nu, (hi - a) as usize);
    // inner[j] = Σ_{n=1}^{j-a} w_ν(n)
    let mut inner = R::zero();
    let mut outer = R::zero();
    let mut pairs = Vec::new();
    for j in a + 1..=hi {
        inner += row.weight(j - a);
        if j > a + m as i64 {
            outer += &inner;
            pairs.push((format!("b={j}"), outer.clone(), sum_rising_closed_form(a, m, j, &nu)?));
        }
    }
    Ok(IdentityCase {
        context: format!("a={a} m={m} nu={nu}"),
        pairs,
    })
}

fn power_rule_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let mut pairs = Vec::new();
    for _ in 0..10 {
        let a = rng.random_range(-5..=5);
        let k = rng.random_range(0..=8u32);
        let p = rng.random_range(0..=k);
        let t = a + rng.random_range(-10..=30);
        let (lhs, rhs) = power_rule_sides::<R>(a, k, p, t)?;
        pairs.push((format!("a={a} k={k} p={p} t={t}"), lhs, rhs));
    }
    Ok(IdentityCase {
        context: "power rule".into(),
        pairs,
    })
}

fn gamma_quotient_case<R: Real>(rng: &mut impl Rng) -> Result<IdentityCase<R>> {
    let mut pairs = Vec::new();
    for _ in 0..8 {
        let n = rng.random_range(1..=30);
        let den = rng.random_range(1..=8);
        let num = rng.random_range(-den + 1..=5 * den);
        let k = crate::scalar::rat(num, den);
        let (lhs, rhs) = gamma_quotient_sides::<R>(n, &k)?;
        pairs.push((format!("n={n} k={k}"), lhs, rhs));
    }
    Ok(IdentityCase {
        context: "gamma quotient".into(),
        pairs,
    })
}

/// Builds the instance of `suite` determined by `seed`.
pub fn identity_case<R: Real>(suite: IdentitySuite, seed: u64) -> Result<IdentityCase<R>> {
    let mut rng = rng_from(seed);
    let rng = &mut rng;
    match suite {
        IdentitySuite::Exponents => exponents_case(rng),
        IdentitySuite::Duality => duality_case(rng),
        IdentitySuite::NablaOfSum => nabla_of_sum_case(rng),
        IdentitySuite::Taylor => taylor_case(rng),
        IdentitySuite::TaylorExtended => taylor_extended_case(rng),
        IdentitySuite::KernelClosedForm => kernel_closed_form_case(rng),
        IdentitySuite::RisingSum => rising_sum_case(rng),
        IdentitySuite::PowerRule => power_rule_case(rng),
        IdentitySuite::GammaQuotient => gamma_quotient_case(rng),
    }
}

fn identity_outcome<R: Real>(suite: IdentitySuite, seed: u64, tol: &TolerancePolicy) -> Result<Outcome> {
    let case = identity_case::<R>(suite, seed)?;
    let mut worst = R::zero();
    let mut failure = None;
    for (label, lhs, rhs) in &case.pairs {
        let defect = (lhs.clone() - rhs.clone()).abs();
        let ok = match R::BACKEND {
            Backend::Exact => defect.is_zero(),
            Backend::Float => tol.close(lhs.to_f64(), rhs.to_f64()),
        };
        if !ok && failure.is_none() {
            failure = Some(format!(
                "{suite} seed {seed}: {} at {label}: lhs={lhs} rhs={rhs}",
                case.context
            ));
        }
        if defect > worst || defect.to_f64().is_nan() {
            worst = defect;
        }
    }
    Ok(Outcome {
        seed,
        checks: case.pairs.len() as u64,
        worst: worst.to_scalar(),
        failure,
    })
}

pub fn run_identity_suite(suite: IdentitySuite, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let outcomes = match cfg.backend {
        Backend::Exact => run_parallel(cfg, |seed| identity_outcome::<Rational>(suite, seed, &cfg.tolerance))?,
        Backend::Float => run_parallel(cfg, |seed| identity_outcome::<f64>(suite, seed, &cfg.tolerance))?,
    };
    Ok(aggregate(suite.name(), "identity", cfg, BTreeMap::new(), outcomes, true))
}

// ---------------------------------------------------------------------------
// inequalities

fn weights(rng: &mut impl Rng, lo: i64, hi: i64, unit: bool, k_lo: i64, k_hi: i64) -> Result<GridFunction<Rational>> {
    GridFunction::from_fn(lo, hi, |_| if unit { int(1) } else { random_eighths(rng, k_lo, k_hi) })
}

fn admissible(rng: &mut impl Rng, a: i64, m: u32, b: i64, k0: u32) -> Result<GridFunction<Rational>> {
    gen_function(&FunctionSpec {
        a,
        m,
        b,
        zero_initials_from: k0,
        value_range: VALUE_RANGE,
        seed: rng.random(),
    })
}

fn order_above(rng: &mut impl Rng, fixed: &Option<FractionalOrder>, lo: u32, hi: u32) -> FractionalOrder {
    fixed.clone().unwrap_or_else(|| random_order(rng, lo, hi.max(lo + 1)))
}

/// Evaluates the reports of one trial of `suite` on `backend`.
pub fn inequality_trial(
    suite: InequalitySuite,
    icfg: &InequalityConfig,
    backend: Backend,
    seed: u64,
) -> Result<Vec<InequalityReport>> {
    match backend {
        Backend::Exact => inequality_trial_in::<Rational>(suite, icfg, seed),
        Backend::Float => inequality_trial_in::<f64>(suite, icfg, seed),
    }
}

fn inequality_trial_in<R: Real>(
    suite: InequalitySuite,
    icfg: &InequalityConfig,
    seed: u64,
) -> Result<Vec<InequalityReport>> {
    let mut rng = rng_from(seed);
    let rng = &mut rng;
    let a = rng.random_range(0..=3);
    let p = icfg.p;
    let span = |rng: &mut ChaCha8Rng, a: i64, m: u32| span(rng, a, m, icfg.max_len);
    match suite {
        InequalitySuite::Opial => {
            let mu = order_above(rng, &icfg.mu, 2, 3);
            let m = mu.ceil();
            let t = span(rng, a, m)? - 1;
            let f = admissible(rng, a, m, t + 1, p)?;
            let c = weights(rng, a + 1, t, icfg.unit_weights, 4, 16)?;
            let d = weights(rng, a + m as i64, t, icfg.unit_weights, 0, 16)?;
            let params = OpialParams::new(mu, p, icfg.exps.clone(), c.to_backend::<R>(), d.to_backend::<R>())?;
            Ok(vec![opial_report(&f.to_backend::<R>(), a, t, &params, icfg.g_variant)?])
        }
        InequalitySuite::Opial25 => {
            let t = rng.random_range(3..=20);
            let f = admissible(rng, 0, 3, t + 1, 0)?;
            Ok(vec![opial_corollary_25(&f.to_backend::<R>(), t, icfg.g_variant)?])
        }
        InequalitySuite::Ostrowski | InequalitySuite::Poincare | InequalitySuite::Sobolev => {
            let mu = order_above(rng, &icfg.mu, p, 3);
            let m = mu.ceil();
            let b = span(rng, a, m)?;
            let k0 = if suite == InequalitySuite::Ostrowski { p + 1 } else { p };
            let f = admissible(rng, a, m, b, k0.min(m))?.to_backend::<R>();
            match suite {
                InequalitySuite::Ostrowski => Ok(vec![ostrowski_report(&f, a, b, &mu, p)?]),
                InequalitySuite::Poincare => Ok(vec![poincare_report(&f, a, b, &mu, p, &icfg.exps)?]),
                _ => icfg
                    .rs
                    .iter()
                    .map(|r| sobolev_report(&f, a, b, &mu, p, &icfg.exps, r))
                    .collect(),
            }
        }
        InequalitySuite::AvgSobolev => {
            let mus = match &icfg.mus {
                Some(v) => v.clone(),
                None => {
                    let first = random_order(rng, 0, 3);
                    let mut second = random_order(rng, 0, 3);
                    while second == first {
                        second = random_order(rng, 0, 3);
                    }
                    if second.value() < first.value() {
                        vec![second, first]
                    } else {
                        vec![first, second]
                    }
                }
            };
            let mk = mus.iter().map(|m| m.ceil()).max().unwrap_or(1);
            let b = span(rng, a, mk)?;
            let f = admissible(rng, a, mk, b, 0)?.to_backend::<R>();
            let cs = mus
                .iter()
                .map(|_| weights(rng, a + 1, b, icfg.unit_weights, 5, 15).map(|c| c.to_backend::<R>()))
                .collect::<Result<Vec<_>>>()?;
            icfg.rs
                .iter()
                .map(|r| avg_sobolev_report(&f, a, b, &mus, &cs, r))
                .collect()
        }
    }
}

/// Right end of a random interval with `b > a+m` and at most `max_len` grid points.
fn span(rng: &mut impl Rng, a: i64, m: u32, max_len: i64) -> Result<i64> {
    let hi = a + max_len - m as i64;
    if hi < a + m as i64 + 1 {
        return Err(Error::Param(format!("max_len={max_len} too small for m={m}")));
    }
    Ok(rng.random_range(a + m as i64 + 1..=hi))
}

fn describe(report: &InequalityReport) -> String {
    let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "{} [{}]: lhs={} rhs={} slack={}",
        report.name,
        params.join(" "),
        report.lhs,
        report.rhs,
        report.slack
    )
}

pub fn run_inequality_suite(suite: InequalitySuite, cfg: &SuiteConfig, icfg: &InequalityConfig) -> Result<SuiteResult> {
    if icfg.rs.is_empty() && matches!(suite, InequalitySuite::Sobolev | InequalitySuite::AvgSobolev) {
        return Err(Error::Param("at least one r is required".into()));
    }
    let outcomes = run_parallel(cfg, |seed| {
        let reports = inequality_trial(suite, icfg, cfg.backend, seed)?;
        let mut worst: Option<Scalar> = None;
        let mut failure = None;
        for r in &reports {
            if worst.as_ref().is_none_or(|w| worse(&r.slack, w, false)) {
                worst = Some(r.slack.clone());
            }
            if !r.holds_under(&cfg.tolerance) && failure.is_none() {
                let exact = r
                    .exact
                    .as_ref()
                    .map(|e| format!(" exact^{}: {} <= {} is {}", e.power, e.lhs, e.rhs, e.holds))
                    .unwrap_or_default();
                failure = Some(format!("{suite} seed {seed}: {}{exact}", describe(r)));
            }
        }
        Ok(Outcome {
            seed,
            checks: reports.len() as u64,
            worst: worst.unwrap_or(Scalar::Float(0.0)),
            failure,
        })
    })?;
    Ok(aggregate(suite.name(), "inequality", cfg, icfg.echo(suite), outcomes, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: u64) -> SuiteConfig {
        SuiteConfig::new(trials, 42, Backend::Exact)
    }

    #[test]
    fn names_round_trip() {
        for s in IdentitySuite::ALL {
            assert_eq!(s.name().parse::<IdentitySuite>().unwrap(), *s);
        }
        for s in InequalitySuite::ALL {
            assert_eq!(s.name().parse::<InequalitySuite>().unwrap(), *s);
        }
        assert!("nope".parse::<IdentitySuite>().is_err());
    }

    #[test]
    fn every_identity_suite_passes_briefly() {
        for s in IdentitySuite::ALL {
            for backend in [Backend::Exact, Backend::Float] {
                let r = run_identity_suite(*s, &SuiteConfig::new(4, 9, backend)).unwrap();
                assert!(r.passed(), "{s} {backend}: {:?}", r.messages);
                assert!(r.checks > 0);
            }
        }
    }

    #[test]
    fn power_rule_precondition_surfaces() {
        assert!(matches!(power_rule_sides::<Rational>(0, 1, 2, 5), Err(Error::Param(_))));
        let (l, r) = power_rule_sides::<Rational>(0, 3, 1, 4).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn every_inequality_suite_passes_briefly() {
        for s in InequalitySuite::ALL {
            let r = run_inequality_suite(*s, &quick(4), &InequalityConfig::default()).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.messages);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_identity_suite(IdentitySuite::Taylor, &quick(0)).is_err());
    }

    #[test]
    fn deterministic() {
        let a = run_identity_suite(IdentitySuite::Exponents, &quick(6)).unwrap();
        let b = run_identity_suite(IdentitySuite::Exponents, &quick(6)).unwrap();
        assert_eq!(a, b);
    }
}
