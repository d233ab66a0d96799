use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    check_boundary, exact_series, float_series, fpow, order_param, require_base, Conjugate, ExactComparison,
    InequalityReport,
};
use crate::error::{Error, Result};
use crate::frac::{caputo_series, FractionalOrder, KernelRow};
use crate::grid::{nabla, GridFunction};
use crate::scalar::{gamma, int, rat, Backend, Real, Scalar};

/// Which closed form of the `g`-functional bounds `Σ g(t')∇g(t')`.
///
/// `Paper` adds `2[g(t)g(t-1) - g(a+m-1)g(a+m-2)]`, `Tight` subtracts it.
/// `Tight` is not a valid bound in general (see the counterexample test).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GVariant {
    #[default]
    Paper,
    Tight,
}

impl fmt::Display for GVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GVariant::Paper => "paper",
            GVariant::Tight => "tight",
        })
    }
}

impl FromStr for GVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(GVariant::Paper),
            "tight" => Ok(GVariant::Tight),
            other => Err(Error::Param(format!("unknown g-variant {other:?} (expected paper|tight)"))),
        }
    }
}

impl GVariant {
    /// `G(t, a, m, g)` from a `g` series covering `[a+m-2, t]`.
    pub fn evaluate<R: Real>(self, g: &GridFunction<R>, a: i64, m: u32, t: i64) -> Result<R> {
        let m = m as i64;
        if t < a + m {
            return Err(Error::Window { t, min: a + m });
        }
        let (gt, gt1) = (g.get(t)?.clone(), g.get(t - 1)?.clone());
        let (g1, g2) = (g.get(a + m - 1)?.clone(), g.get(a + m - 2)?.clone());
        let two = R::from_i64(2);
        let squares = two.clone() * (gt.clone() * gt.clone() - g1.clone() * g1.clone())
            + (gt1.clone() * gt1.clone() - g2.clone() * g2.clone()) / two.clone();
        let cross = two * (gt * gt1 - g1 * g2);
        Ok(match self {
            GVariant::Paper => squares + cross,
            GVariant::Tight => squares - cross,
        })
    }
}

/// Weights and exponents of the Opial inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct OpialParams<R> {
    mu: FractionalOrder,
    p: u32,
    exps: Conjugate,
    c: GridFunction<R>,
    d: GridFunction<R>,
}

impl<R: Real> OpialParams<R> {
    /// `c` must be positive and `d` non-negative wherever they are defined;
    /// coverage of `[a+1, t]` and `[a+m, t]` is checked at evaluation.
    pub fn new(mu: FractionalOrder, p: u32, exps: Conjugate, c: GridFunction<R>, d: GridFunction<R>) -> Result<Self> {
        let mu = mu.require_non_integer()?;
        if *mu.value() <= int(2) {
            return Err(Error::Order(format!("Opial needs mu > 2, got {mu}")));
        }
        mu.minus(p)?;
        if let Some((s, v)) = c.iter().find(|(_, v)| **v <= R::zero()) {
            return Err(Error::Param(format!("C({s}) = {v} must be positive")));
        }
        if let Some((s, v)) = d.iter().find(|(_, v)| **v < R::zero()) {
            return Err(Error::Param(format!("D({s}) = {v} must be non-negative")));
        }
        Ok(OpialParams { mu, p, exps, c, d })
    }

    /// `C ≡ 1` on `[a+1, t]`, `D ≡ 1` on `[a+m, t]`, `γ = δ = 2`.
    pub fn unit(mu: FractionalOrder, p: u32, a: i64, t: i64) -> Result<Self> {
        let m = mu.ceil() as i64;
        let c = GridFunction::constant(a + 1, t.max(a + 1), R::one())?;
        let d = GridFunction::constant(a + m, t.max(a + m), R::one())?;
        Self::new(mu, p, Conjugate::quadratic(), c, d)
    }

    pub fn mu(&self) -> &FractionalOrder {
        &self.mu
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exps(&self) -> &Conjugate {
        &self.exps
    }

    pub fn c(&self) -> &GridFunction<R> {
        &self.c
    }

    pub fn d(&self) -> &GridFunction<R> {
        &self.d
    }
}

pub fn opial_report<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    t: i64,
    params: &OpialParams<R>,
    variant: GVariant,
) -> Result<InequalityReport> {
    require_base(a)?;
    let OpialParams { mu, p, exps, c, d } = params;
    let p = *p;
    let m = mu.ceil();
    let mi = m as i64;
    if t < a + mi {
        return Err(Error::Window { t, min: a + mi });
    }
    f.require(a - mi + 1, t)?;
    check_boundary(f, a, p..m)?;
    c.require(a + 1, t)?;
    d.require(a + mi, t)?;

    let cap = caputo_series(f, a + 1, mu, t)?;
    let np = GridFunction::try_from_fn(a + mi, t, |s| nabla(f, s, p))?;
    let kernel_order = mu.minus(p)?;
    let row = KernelRow::<R>::new(&kernel_order, (t - a) as usize);
    let at = |g: &GridFunction<R>, s: i64| g.get(s).cloned().expect("coverage checked");

    let mut lhs = R::zero();
    for s in a + mi..=t {
        lhs += &(at(d, s) * at(&np, s).abs() * at(&cap, s).abs());
    }

    let (gam, del) = (exps.gamma_f64(), exps.delta_f64());
    let theta: Vec<f64> = (a + mi..=t)
        .map(|s| {
            let sum: f64 = (a + 1..=s)
                .map(|tau| fpow(row.weight(s - tau + 1).to_f64() / at(c, tau).to_f64(), gam))
                .sum();
            sum.powf(1.0 / gam)
        })
        .collect();
    let k_sum: f64 = (a + mi..=t)
        .zip(&theta)
        .map(|(s, th)| fpow(at(d, s).to_f64() / at(c, s).to_f64() * th, gam))
        .sum();
    let k = k_sum.powf(1.0 / gam);

    let mut acc = 0.0;
    let g = GridFunction::from_fn(a + 1, t, |s| {
        acc += fpow(at(c, s).to_f64() * at(&cap, s).to_f64().abs(), del);
        acc
    })?;
    let g_paper = GVariant::Paper.evaluate(&g, a, m, t)?;
    let g_tight = GVariant::Tight.evaluate(&g, a, m, t)?;
    let chosen = match variant {
        GVariant::Paper => g_paper,
        GVariant::Tight => g_tight,
    };
    let rhs = if chosen < 0.0 { f64::NAN } else { k * chosen.powf(1.0 / del) };

    let exact_parts = (R::BACKEND == Backend::Exact && exps.is_quadratic())
        .then(|| exact_opial(&cap, c, d, &row, a, m, t));
    let (g_series, gp_s, gt_s, exact) = match exact_parts {
        Some(parts) => {
            let (g_exact, k2) = parts?;
            let gp = GVariant::Paper.evaluate(&g_exact, a, m, t)?;
            let gt = GVariant::Tight.evaluate(&g_exact, a, m, t)?;
            let chosen = match variant {
                GVariant::Paper => gp.clone(),
                GVariant::Tight => gt.clone(),
            };
            let cmp = ExactComparison::new(2, (lhs.clone() * lhs.clone()).to_scalar(), (k2 * chosen).to_scalar());
            (exact_series(&g_exact), gp.to_scalar(), gt.to_scalar(), Some(cmp))
        }
        None => (float_series(&g), Scalar::Float(g_paper), Scalar::Float(g_tight), None),
    };

    let theta_scale = gamma(Real::to_f64(kernel_order.value()));
    let max_caputo = cap.values().iter().map(R::abs).fold(R::zero(), R::max_of);
    Ok(InequalityReport::new("opial", Scalar::Float(lhs.to_f64()), Scalar::Float(rhs))
        .with_exact(exact)
        .param("a", a)
        .param("t", t)
        .param("mu", order_param(mu))
        .param("p", p)
        .param("gamma", exps.gamma())
        .param("delta", exps.delta())
        .param("g_variant", variant)
        .param("backend", R::BACKEND)
        .array("theta", theta.iter().map(|th| Scalar::Float(th * theta_scale)).collect())
        .array("g", g_series)
        .number("G_paper", gp_s)
        .number("G_tight", gt_s)
        .number("K", Scalar::Float(k))
        .array("caputo", exact_series(&cap))
        .number("max_caputo", max_caputo.to_scalar()))
}

/// Exact `g` series (δ = 2) and `K²` (γ = 2).
fn exact_opial<R: Real>(
    cap: &GridFunction<R>,
    c: &GridFunction<R>,
    d: &GridFunction<R>,
    row: &KernelRow<R>,
    a: i64,
    m: u32,
    t: i64,
) -> Result<(GridFunction<R>, R)> {
    let mut acc = R::zero();
    let g = GridFunction::try_from_fn(a + 1, t, |s| {
        let x = c.get(s)?.clone() * cap.get(s)?.clone();
        acc += &(x.clone() * x);
        Ok(acc.clone())
    })?;
    let mut k2 = R::zero();
    for s in a + m as i64..=t {
        let mut theta2 = R::zero();
        for tau in a + 1..=s {
            let x = row.weight(s - tau + 1).clone() / c.get(tau)?.clone();
            theta2 += &(x.clone() * x);
        }
        let ratio = d.get(s)?.clone() / c.get(s)?.clone();
        k2 += &(ratio.clone() * ratio * theta2);
    }
    Ok((g, k2))
}

/// Specialization to `μ = 5/2`, `a = 0`, `p = 0`, `C ≡ D ≡ 1`, `γ = δ = 2` for
/// `f` vanishing at `0, -1, -2`.
///
/// Besides the Opial components, the report carries the kernel prefactor
/// `1/Γ(5/2)` next to its closed form `4/(3√π)`, and `g_bar_1 = ḡ(1)`, which
/// equals `f(1)²` because the only kernel weight involved is `w_{1/2}(1) = 1`.
pub fn opial_corollary_25<R: Real>(f: &GridFunction<R>, t: i64, variant: GVariant) -> Result<InequalityReport> {
    if t < 3 {
        return Err(Error::Window { t, min: 3 });
    }
    f.require(-2, t)?;
    for s in [0, -1, -2] {
        let v = f.get(s)?;
        if !v.is_zero() {
            return Err(Error::Boundary {
                k: 0,
                a: s,
                value: v.to_string(),
            });
        }
    }
    let mu = FractionalOrder::non_integer(rat(5, 2))?;
    let params = OpialParams::<R>::unit(mu, 0, 0, t)?;
    let mut report = opial_report(f, 0, t, &params, variant)?;
    report.name = "opial-25".to_string();
    let g_bar_1 = report.array_of("g").expect("g series")[0].clone();
    let prefactor = 1.0 / gamma(2.5);
    let closed = 4.0 / (3.0 * std::f64::consts::PI.sqrt());
    Ok(report
        .number("prefactor", Scalar::Float(prefactor))
        .number("prefactor_closed_form", Scalar::Float(closed))
        .number("prefactor_rel_error", Scalar::Float((prefactor - closed).abs() / closed))
        .number("g_bar_1", g_bar_1))
}
