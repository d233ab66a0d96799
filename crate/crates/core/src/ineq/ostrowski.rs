use super::{check_boundary, exact_series, order_param, require_base, require_interval, ExactComparison, InequalityReport};
use crate::error::Result;
use crate::frac::{caputo_series, FractionalOrder};
use crate::grid::{nabla, GridFunction};
use crate::scalar::{Backend, Real};
use crate::taylor::sum_rising_closed_form;

/// Deviation of the mean of `∇^p f` over `[a+m+1, b]` from `∇^p f(a)`, against
/// `coefficient · max |∇_{(a+1)*}^{μ} f|` on `[a+1, b]`.
///
/// Only `∇^k f(a)` for `k = p+1..m-1` must vanish; `∇^p f(a)` is free.
pub fn ostrowski_report<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    b: i64,
    mu: &FractionalOrder,
    p: u32,
) -> Result<InequalityReport> {
    require_base(a)?;
    let mu = mu.clone().require_non_integer()?;
    let kernel_order = mu.minus(p)?;
    let m = mu.ceil();
    require_interval(a, m, b)?;
    f.require(a - m as i64 + 1, b)?;
    check_boundary(f, a, p + 1..m)?;

    let base = nabla(f, a, p)?;
    let n = b - a - m as i64;
    let mut sum = R::zero();
    for j in a + m as i64 + 1..=b {
        sum += &nabla(f, j, p)?;
    }
    let mean = sum / R::from_i64(n);
    let lhs = (mean.clone() - base.clone()).abs();

    let cap = caputo_series(f, a + 1, &mu, b)?;
    let max_caputo = cap.values().iter().map(R::abs).fold(R::zero(), R::max_of);
    let coefficient = sum_rising_closed_form::<R>(a, m, b, &kernel_order)? / R::from_i64(n);
    let rhs = coefficient.clone() * max_caputo.clone();

    let exact = (R::BACKEND == Backend::Exact).then(|| ExactComparison::new(1, lhs.to_scalar(), rhs.to_scalar()));
    Ok(InequalityReport::new("ostrowski", lhs.to_scalar(), rhs.to_scalar())
        .with_exact(exact)
        .param("a", a)
        .param("b", b)
        .param("mu", order_param(&mu))
        .param("p", p)
        .param("backend", R::BACKEND)
        .number("coefficient", coefficient.to_scalar())
        .number("max_caputo", max_caputo.to_scalar())
        .number("mean", mean.to_scalar())
        .number("base", base.to_scalar())
        .array("caputo", exact_series(&cap)))
}
