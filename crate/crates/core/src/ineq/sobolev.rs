use super::{
    check_boundary, even_power, exact_series, fpow, kernel_power_sums, kernel_square_sums, order_param, require_base,
    require_interval, require_r, Conjugate, ExactComparison, InequalityReport,
};
use crate::error::{Error, Result};
use crate::frac::{caputo_series, FractionalOrder, KernelRow};
use crate::grid::{nabla, GridFunction};
use crate::scalar::{Backend, Rational, Real, Scalar};

/// Quantities shared by the Poincaré and Sobolev bounds.
struct Prep<R> {
    m: u32,
    /// `∇^p f(j)` for `j ∈ [a+m, b]`
    np: Vec<R>,
    /// `∇_{(a+1)*}^{μ} f` on `[a+1, b]`
    cap: GridFunction<R>,
    /// kernel of order `μ - p`, length `b - a`
    row: KernelRow<R>,
}

fn prepare<R: Real>(f: &GridFunction<R>, a: i64, b: i64, mu: &FractionalOrder, p: u32) -> Result<Prep<R>> {
    require_base(a)?;
    let mu = mu.clone().require_non_integer()?;
    let kernel_order = mu.minus(p)?;
    let m = mu.ceil();
    require_interval(a, m, b)?;
    f.require(a - m as i64 + 1, b)?;
    check_boundary(f, a, p..m)?;
    let np = (a + m as i64..=b).map(|j| nabla(f, j, p)).collect::<Result<_>>()?;
    let cap = caputo_series(f, a + 1, &mu, b)?;
    let row = KernelRow::new(&kernel_order, (b - a) as usize);
    Ok(Prep { m, np, cap, row })
}

/// `Σ_j (Σ_{n=1}^{j-a} w(n)^γ)^{e}` over `j ∈ [a+m, b]`.
fn kernel_factor<R: Real>(row: &KernelRow<R>, gamma: f64, e: f64, a: i64, m: u32, b: i64) -> f64 {
    let sums = kernel_power_sums(row, gamma, (b - a) as usize);
    (a + m as i64..=b).map(|j| fpow(sums[(j - a) as usize], e)).sum()
}

/// `Σ_j (Σ_{n=1}^{j-a} w(n)^2)^e` in the backend field.
fn kernel_factor_exact<R: Real>(row: &KernelRow<R>, e: u32, a: i64, m: u32, b: i64) -> R {
    let sums = kernel_square_sums(row, (b - a) as usize);
    let mut acc = R::zero();
    for j in a + m as i64..=b {
        acc += &sums[(j - a) as usize].powi(e);
    }
    acc
}

fn abs_power_sum<R: Real>(values: &[R], e: f64) -> f64 {
    values.iter().map(|v| fpow(v.to_f64().abs(), e)).sum()
}

fn even_power_sum<R: Real>(values: &[R], e: u32) -> R {
    let mut acc = R::zero();
    for v in values {
        acc += &v.powi(e);
    }
    acc
}

/// `Σ_{j=a+m}^{b} |∇^p f(j)|^δ` against
/// `{Σ_j (Σ_τ w_{μ-p}(j-τ+1)^γ)^{δ/γ}} · Σ_{τ=a+1}^{b} |∇_{(a+1)*}^{μ} f(τ)|^δ`.
pub fn poincare_report<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    b: i64,
    mu: &FractionalOrder,
    p: u32,
    exps: &Conjugate,
) -> Result<InequalityReport> {
    let Prep { m, np, cap, row } = prepare(f, a, b, mu, p)?;
    let (lhs, rhs, kf, q) = if exps.is_quadratic() {
        let lhs = even_power_sum(&np, 2);
        let kf = kernel_factor_exact(&row, 1, a, m, b);
        let q = even_power_sum(cap.values(), 2);
        let rhs = kf.clone() * q.clone();
        (lhs.to_scalar(), rhs.to_scalar(), kf.to_scalar(), q.to_scalar())
    } else {
        let (gam, del) = (exps.gamma_f64(), exps.delta_f64());
        let kf = kernel_factor(&row, gam, del / gam, a, m, b);
        let q = abs_power_sum(cap.values(), del);
        (
            Scalar::Float(abs_power_sum(&np, del)),
            Scalar::Float(kf * q),
            Scalar::Float(kf),
            Scalar::Float(q),
        )
    };
    let exact = (R::BACKEND == Backend::Exact && lhs.is_exact())
        .then(|| ExactComparison::new(1, lhs.clone(), rhs.clone()));
    Ok(InequalityReport::new("poincare", lhs, rhs)
        .with_exact(exact)
        .param("a", a)
        .param("b", b)
        .param("mu", order_param(mu))
        .param("p", p)
        .param("gamma", exps.gamma())
        .param("delta", exps.delta())
        .param("backend", R::BACKEND)
        .number("kernel_factor", kf)
        .number("caputo_norm", q)
        .array("caputo", exact_series(&cap)))
}

/// `(Σ_{j=a+m}^{b} |∇^p f(j)|^r)^{1/r}` against
/// `[Σ_j (Σ_τ w_{μ-p}(j-τ+1)^γ)^{r/γ}]^{1/r} · (Σ_τ |∇_{(a+1)*}^{μ} f(τ)|^δ)^{1/δ}`.
#[allow(clippy::too_many_arguments)]
pub fn sobolev_report<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    b: i64,
    mu: &FractionalOrder,
    p: u32,
    exps: &Conjugate,
    r: &Rational,
) -> Result<InequalityReport> {
    require_r(r)?;
    let Prep { m, np, cap, row } = prepare(f, a, b, mu, p)?;
    let rf = Real::to_f64(r);
    let (gam, del) = (exps.gamma_f64(), exps.delta_f64());
    let kf = kernel_factor(&row, gam, rf / gam, a, m, b);
    let q = abs_power_sum(cap.values(), del);
    let lhs = abs_power_sum(&np, rf).powf(1.0 / rf);
    let rhs = kf.powf(1.0 / rf) * q.powf(1.0 / del);

    let exact = match even_power(r) {
        Some(e) if R::BACKEND == Backend::Exact && exps.is_quadratic() => {
            let half = e / 2;
            let lhs_r = even_power_sum(&np, e);
            let kf_exact = kernel_factor_exact(&row, half, a, m, b);
            let q_exact = even_power_sum(cap.values(), 2);
            Some(ExactComparison::new(
                e,
                lhs_r.to_scalar(),
                (kf_exact * q_exact.powi(half)).to_scalar(),
            ))
        }
        _ => None,
    };
    Ok(InequalityReport::new("sobolev", Scalar::Float(lhs), Scalar::Float(rhs))
        .with_exact(exact)
        .param("a", a)
        .param("b", b)
        .param("mu", order_param(mu))
        .param("p", p)
        .param("gamma", exps.gamma())
        .param("delta", exps.delta())
        .param("r", r)
        .param("backend", R::BACKEND)
        .number("kernel_factor", Scalar::Float(kf))
        .number("caputo_norm", Scalar::Float(q))
        .array("caputo", exact_series(&cap)))
}

/// `‖f‖_{r,[lo,hi]} = (Σ_{j=lo}^{hi} |f(j)|^r)^{1/r}`.
pub fn r_norm<R: Real>(f: &GridFunction<R>, lo: i64, hi: i64, r: f64) -> Result<f64> {
    f.require(lo, hi)?;
    let sum: f64 = (lo..=hi).map(|j| fpow(f.get(j).expect("checked").to_f64().abs(), r)).sum();
    Ok(sum.powf(1.0 / r))
}

/// `‖f‖_{r,[a+m_k,b]}` against `sqrt(δ*·ρ*) · (Σ_l B_l / k)^{1/2}` for orders
/// `μ_1 < … < μ_k` with positive weights `C_l` on `[a+1, b]`.
pub fn avg_sobolev_report<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    b: i64,
    mus: &[FractionalOrder],
    cs: &[GridFunction<R>],
    r: &Rational,
) -> Result<InequalityReport> {
    require_r(r)?;
    require_base(a)?;
    if mus.is_empty() || mus.len() != cs.len() {
        return Err(Error::Param(format!(
            "need one weight per order, got {} orders and {} weights",
            mus.len(),
            cs.len()
        )));
    }
    for w in mus.windows(2) {
        if w[0].value() >= w[1].value() {
            return Err(Error::Order(format!(
                "orders must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let mus = mus
        .iter()
        .map(|mu| mu.clone().require_non_integer())
        .collect::<Result<Vec<_>>>()?;
    let mk = mus.last().expect("non-empty").ceil();
    require_interval(a, mk, b)?;
    f.require(a - mk as i64 + 1, b)?;
    check_boundary(f, a, 0..mk)?;
    for (l, c) in cs.iter().enumerate() {
        c.require(a + 1, b)?;
        if let Some((s, v)) = c.iter().find(|(_, v)| **v <= R::zero()) {
            return Err(Error::Param(format!("C_{}({s}) = {v} must be positive", l + 1)));
        }
    }

    let rf = Real::to_f64(r);
    let k = mus.len() as i64;
    let mut b_terms = Vec::with_capacity(mus.len());
    let mut delta_l = Vec::with_capacity(mus.len());
    let mut delta_exact: Vec<R> = Vec::new();
    let mut rho = R::zero();
    let even = even_power(r).filter(|_| R::BACKEND == Backend::Exact);
    for (mu, c) in mus.iter().zip(cs) {
        let cap = caputo_series(f, a + 1, mu, b)?;
        let mut bl = R::zero();
        for tau in a + 1..=b {
            let x = cap.get(tau)?.clone();
            bl += &(c.get(tau)?.clone() * x.clone() * x);
            rho = rho.max_of(R::one() / c.get(tau)?.clone());
        }
        b_terms.push(bl);
        let row = KernelRow::<R>::new(mu, (b - a) as usize);
        let d = kernel_factor(&row, 2.0, rf / 2.0, a, mu.ceil(), b);
        delta_l.push(d.powf(2.0 / rf));
        if let Some(e) = even {
            delta_exact.push(kernel_factor_exact(&row, e / 2, a, mu.ceil(), b));
        }
    }
    let delta_star = delta_l.iter().cloned().fold(0.0, f64::max);
    let mut b_sum = R::zero();
    for bl in &b_terms {
        b_sum += bl;
    }
    let avg = b_sum / R::from_i64(k);
    let lhs = r_norm(f, a + mk as i64, b, rf)?;
    let rhs = (delta_star * rho.to_f64() * avg.to_f64()).sqrt();

    let exact = even.map(|e| {
        let mut lhs_r = R::zero();
        for j in a + mk as i64..=b {
            lhs_r += &f.get(j).expect("checked").powi(e);
        }
        let d_max = delta_exact.iter().cloned().fold(R::zero(), R::max_of);
        let rhs_r = d_max * (rho.clone() * avg.clone()).powi(e / 2);
        ExactComparison::new(e, lhs_r.to_scalar(), rhs_r.to_scalar())
    });
    Ok(InequalityReport::new("avg-sobolev", Scalar::Float(lhs), Scalar::Float(rhs))
        .with_exact(exact)
        .param("a", a)
        .param("b", b)
        .param("mu", mus.iter().map(order_param).collect::<Vec<_>>().join(","))
        .param("r", r)
        .param("backend", R::BACKEND)
        .array("B", b_terms.iter().map(R::to_scalar).collect())
        .array("delta_l", delta_l.into_iter().map(Scalar::Float).collect())
        .number("delta_star", Scalar::Float(delta_star))
        .number("rho_star", rho.to_scalar()))
}
