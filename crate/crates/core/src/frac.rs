//! Fractional sums and the Caputo-like nabla fractional difference.
//!
//! The ν-th order nabla fractional sum with base `a` is
//!
//! ```text
//! ∇_a^{-ν} f(t) = Σ_{s=a}^{t} w_ν(t-s+1) f(s),   w_ν(n) = Γ(n+ν-1) / (Γ(n)Γ(ν))
//! ```
//!
//! and the Caputo-like difference of order `μ` (with `m = ⌈μ⌉`) is the
//! fractional sum of order `m-μ` applied to `∇^m f`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::grid::{nabla, GridFunction};
use crate::scalar::{int, parse_rational, Rational, Real};

/// A positive order `μ` together with `m = ⌈μ⌉`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalOrder {
    value: Rational,
    ceil: u32,
}

impl FractionalOrder {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::Order(format!("order must be positive, got {value}")));
        }
        let ceil = value
            .ceil()
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::Order(format!("order {value} is too large")))?;
        Ok(FractionalOrder { value, ceil })
    }

    /// Like [`FractionalOrder::new`], but rejects integer orders.
    pub fn non_integer(value: Rational) -> Result<Self> {
        Self::new(value)?.require_non_integer()
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Order(format!("denominator must be positive, got {den}")));
        }
        Self::new(crate::scalar::rat(num, den))
    }

    pub fn require_non_integer(self) -> Result<Self> {
        if self.is_integer() {
            return Err(Error::Order(format!(
                "a non-integer order is required, got {}",
                self.value
            )));
        }
        Ok(self)
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// `m = ⌈μ⌉`.
    pub fn ceil(&self) -> u32 {
        self.ceil
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }

    /// `m - μ`, the order of the sum inside the Caputo difference.
    pub fn complement(&self) -> Result<FractionalOrder> {
        FractionalOrder::new(int(self.ceil as i64) - &self.value)
    }

    /// `μ - p`, failing unless `p < μ`.
    pub fn minus(&self, p: u32) -> Result<FractionalOrder> {
        let v = &self.value - int(p as i64);
        if !v.is_positive() {
            return Err(Error::Order(format!(
                "need p < μ, got p={p}, μ={}",
                self.value
            )));
        }
        FractionalOrder::new(v)
    }

    pub fn plus(&self, other: &FractionalOrder) -> FractionalOrder {
        FractionalOrder::new(&self.value + &other.value).expect("sum of positive orders")
    }

    pub fn plus_int(&self, k: u32) -> FractionalOrder {
        FractionalOrder::new(&self.value + int(k as i64)).expect("positive order")
    }
}

impl fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Parses `INT ("/" POSINT)?`.
impl FromStr for FractionalOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let ok = match s.split_once('/') {
            Some((n, d)) => is_int(n) && !d.starts_with(['-', '+']) && is_int(d),
            None => is_int(s),
        };
        if !ok {
            return Err(Error::parse(format!("'{s}' is not an order (expected INT or INT/POSINT)")));
        }
        FractionalOrder::new(parse_rational(s)?)
    }
}

fn is_int(s: &str) -> bool {
    let d = s.strip_prefix('-').unwrap_or(s);
    !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())
}

/// Kernel weights `w_ν(1), w_ν(2), ...` of one order.
///
/// Built with the recurrence `w(n+1) = w(n)·(ν+n-1)/n`, `w(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRow<R> {
    order: FractionalOrder,
    nu: R,
    weights: Vec<R>,
}

impl<R: Real> KernelRow<R> {
    pub fn new(order: &FractionalOrder, len: usize) -> Self {
        let mut row = KernelRow {
            order: order.clone(),
            nu: R::from_rational(order.value()),
            weights: Vec::with_capacity(len.max(1)),
        };
        row.weights.push(R::one());
        row.extend_to(len);
        row
    }

    pub fn extend_to(&mut self, len: usize) {
        while self.weights.len() < len {
            let n = self.weights.len() as i64;
            let next = self.weights[self.weights.len() - 1].clone()
                * (self.nu.clone() + R::from_i64(n - 1))
                / R::from_i64(n);
            self.weights.push(next);
        }
    }

    pub fn order(&self) -> &FractionalOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `w_ν(n)` for `1 <= n <= len`.
    pub fn weight(&self, n: i64) -> &R {
        &self.weights[(n - 1) as usize]
    }

    pub fn weights(&self) -> &[R] {
        &self.weights
    }

    /// `Σ_{s=lo}^{t} w(t-s+1) g(s)`.
    fn convolve(&self, g: &GridFunction<R>, lo: i64, t: i64) -> Result<R> {
        let mut acc = R::zero();
        for s in lo..=t {
            let term = self.weight(t - s + 1).clone() * g.get(s)?.clone();
            acc += &term;
        }
        Ok(acc)
    }
}

/// Shared memo of kernel rows keyed by order; rows only ever grow, and a
/// longer row replaces a shorter one in a single write.
#[derive(Debug, Default)]
pub struct KernelCache<R> {
    rows: RwLock<HashMap<Rational, Arc<KernelRow<R>>>>,
}

impl<R: Real> KernelCache<R> {
    pub fn new() -> Self {
        KernelCache {
            rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn row(&self, order: &FractionalOrder, len: usize) -> Arc<KernelRow<R>> {
        if let Some(row) = self.rows.read().expect("kernel cache poisoned").get(order.value()) {
            if row.len() >= len {
                return Arc::clone(row);
            }
        }
        let mut rows = self.rows.write().expect("kernel cache poisoned");
        let entry = rows
            .entry(order.value().clone())
            .or_insert_with(|| Arc::new(KernelRow::new(order, len)));
        if entry.len() < len {
            let mut longer = (**entry).clone();
            longer.extend_to(len);
            *entry = Arc::new(longer);
        }
        Arc::clone(entry)
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("kernel cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn require_window(a: i64, t: i64, what: &'static str) -> Result<()> {
    if t < a {
        return Err(Error::EmptyRange {
            what,
            lower: a,
            upper: t,
        });
    }
    Ok(())
}

/// `∇_a^{-ν} f(t)`; integer `ν = n` gives the plain n-th order sum.
pub fn frac_sum<R: Real>(f: &GridFunction<R>, a: i64, nu: &FractionalOrder, t: i64) -> Result<R> {
    require_window(a, t, "fractional sum")?;
    f.require(a, t)?;
    KernelRow::new(nu, (t - a + 1) as usize).convolve(f, a, t)
}

/// `∇_a^{-ν} f` on `[a, hi]`.
pub fn frac_sum_series<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    nu: &FractionalOrder,
    hi: i64,
) -> Result<GridFunction<R>> {
    require_window(a, hi, "fractional sum")?;
    f.require(a, hi)?;
    let row = KernelRow::new(nu, (hi - a + 1) as usize);
    GridFunction::try_from_fn(a, hi, |t| row.convolve(f, a, t))
}

/// Delta fractional sum `Δ_a^{-ν} f` evaluated at `t = a + ν + j`:
///
/// ```text
/// (1/Γ(ν)) Σ_{s=a}^{a+j} (t-s-1)^{(ν-1)} f(s)
/// ```
///
/// Each falling-factorial weight `Γ(t-s)/(Γ(t-s-ν+1)Γ(ν))` is evaluated
/// directly from its Γ quotient rather than from a recurrence.
pub fn delta_frac_sum<R: Real>(f: &GridFunction<R>, a: i64, nu: &FractionalOrder, j: i64) -> Result<R> {
    if j < 0 {
        return Err(Error::EmptyRange {
            what: "delta fractional sum",
            lower: 0,
            upper: j,
        });
    }
    f.require(a, a + j)?;
    let t = int(a + j) + nu.value();
    let mut acc = R::zero();
    for s in a..=a + j {
        // x = t-s-1, weight Γ(x+1)/(Γ(x+1-(ν-1))Γ(ν))
        let x_plus_1 = &t - int(s);
        let bottom = &x_plus_1 - nu.value() + int(1);
        let w = R::gamma_ratio(&x_plus_1, &bottom, nu.value())?;
        acc += &(w * f.get(s)?.clone());
    }
    Ok(acc)
}

/// Caputo-like nabla difference `∇_{a*}^{μ} f(t) = ∇_a^{-(m-μ)} (∇^m f)(t)`.
pub fn caputo_nabla<R: Real>(f: &GridFunction<R>, a: i64, mu: &FractionalOrder, t: i64) -> Result<R> {
    let mu = mu.clone().require_non_integer()?;
    require_window(a, t, "Caputo difference")?;
    let m = mu.ceil();
    f.require(a - m as i64, t)?;
    let row = KernelRow::<R>::new(&mu.complement()?, (t - a + 1) as usize);
    let mut acc = R::zero();
    for s in a..=t {
        let term = row.weight(t - s + 1).clone() * nabla(f, s, m)?;
        acc += &term;
    }
    Ok(acc)
}

/// `∇_{a*}^{μ} f` on `[a, hi]`.
pub fn caputo_series<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    mu: &FractionalOrder,
    hi: i64,
) -> Result<GridFunction<R>> {
    let mu = mu.clone().require_non_integer()?;
    require_window(a, hi, "Caputo difference")?;
    let m = mu.ceil();
    f.require(a - m as i64, hi)?;
    let diffs = GridFunction::try_from_fn(a, hi, |s| nabla(f, s, m))?;
    frac_sum_series(&diffs, a, &mu.complement()?, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn order(s: &str) -> FractionalOrder {
        s.parse().unwrap()
    }

    fn cube(lo: i64, hi: i64) -> GridFunction<Rational> {
        GridFunction::from_fn(lo, hi, |t| int(t * t * t)).unwrap()
    }

    #[test]
    fn order_parsing() {
        let mu = order("5/2");
        assert_eq!(mu.ceil(), 3);
        assert!(!mu.is_integer());
        assert_eq!(order("3").ceil(), 3);
        assert!(order("3").is_integer());
        assert_eq!(order("4/2").value(), &int(2));
        for bad in ["0", "-1/2", "1/-2", "1.5", "x", "1/0", ""] {
            assert!(bad.parse::<FractionalOrder>().is_err(), "{bad}");
        }
        assert!(FractionalOrder::non_integer(int(3)).is_err());
        assert_eq!(order("5/2").complement().unwrap(), order("1/2"));
        assert!(order("5/2").minus(3).is_err());
    }

    #[test]
    fn kernel_row_recurrence() {
        let row = KernelRow::<Rational>::new(&order("1/2"), 4);
        assert_eq!(row.weights(), &[int(1), rat(1, 2), rat(3, 8), rat(5, 16)]);
        let ones = KernelRow::<Rational>::new(&order("1"), 6);
        assert!(ones.weights().iter().all(|w| *w == int(1)));
    }

    #[test]
    fn frac_sum_examples() {
        let ones = GridFunction::constant(0, 2, int(1)).unwrap();
        assert_eq!(frac_sum(&ones, 0, &order("1/2"), 2).unwrap(), rat(15, 8));
        let f = GridFunction::new(0, vec![int(1), int(2), int(3)]).unwrap();
        assert_eq!(frac_sum(&f, 0, &order("1"), 2).unwrap(), int(6));
        assert_eq!(frac_sum(&f, 1, &order("7/3"), 1).unwrap(), int(2));
    }

    #[test]
    fn frac_sum_errors() {
        let f = GridFunction::constant(0, 2, int(1)).unwrap();
        assert!(matches!(
            frac_sum(&f, 1, &order("1/2"), 0),
            Err(Error::EmptyRange { .. })
        ));
        assert!(matches!(
            frac_sum(&f, -1, &order("1/2"), 1),
            Err(Error::Domain { index: -1, .. })
        ));
    }

    #[test]
    fn delta_frac_sum_examples() {
        let ones = GridFunction::constant(0, 2, int(1)).unwrap();
        assert_eq!(delta_frac_sum(&ones, 0, &order("1/2"), 2).unwrap(), rat(15, 8));
        let f = GridFunction::new(0, vec![int(4), int(2), int(3)]).unwrap();
        assert_eq!(delta_frac_sum(&f, 0, &order("5/3"), 0).unwrap(), int(4));
        let f = GridFunction::new(0, vec![int(1), int(2), int(3)]).unwrap();
        assert_eq!(delta_frac_sum(&f, 0, &order("1"), 2).unwrap(), int(6));
    }

    #[test]
    fn caputo_examples() {
        let f = cube(-2, 6);
        let mu = order("5/2");
        assert_eq!(caputo_nabla(&f, 1, &mu, 3).unwrap(), rat(45, 4));
        assert_eq!(caputo_nabla(&f, 1, &mu, 2).unwrap(), int(9));
        let c = GridFunction::constant(-5, 5, rat(3, 7)).unwrap();
        assert_eq!(caputo_nabla(&c, 0, &order("7/3"), 4).unwrap(), int(0));
        assert!(matches!(caputo_nabla(&f, 1, &order("3"), 3), Err(Error::Order(_))));
        // needs f(a - m) = f(-2)
        assert!(matches!(
            caputo_nabla(&f, 0, &mu, 3),
            Err(Error::Domain { index: -3, .. })
        ));
    }

    #[test]
    fn caputo_series_matches_pointwise() {
        let f = cube(-3, 8);
        let mu = order("7/4");
        let s = caputo_series(&f, 0, &mu, 8).unwrap();
        for t in 0..=8 {
            assert_eq!(*s.get(t).unwrap(), caputo_nabla(&f, 0, &mu, t).unwrap());
        }
    }

    #[test]
    fn cache_extends_rows() {
        let cache = KernelCache::<Rational>::new();
        let mu = order("5/2");
        let short = cache.row(&mu, 3);
        let long = cache.row(&mu, 10);
        assert_eq!(short.weights(), &long.weights()[..3]);
        assert_eq!(long.weights(), KernelRow::new(&mu, 10).weights());
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.row(&mu, 5).len(), 10);
    }

    #[test]
    fn cache_is_shareable() {
        let cache = Arc::new(KernelCache::<f64>::new());
        let handles: Vec<_> = (1..8)
            .map(|k| {
                let cache = Arc::clone(&cache);
                std::thread::spawn(move || {
                    let mu = FractionalOrder::from_ratio(k, 3).unwrap();
                    cache.row(&mu, 20 * k as usize).weights().to_vec()
                })
            })
            .collect();
        for (k, h) in (1..8).zip(handles) {
            let got = h.join().unwrap();
            let mu = FractionalOrder::from_ratio(k, 3).unwrap();
            assert_eq!(got, KernelRow::<f64>::new(&mu, 20 * k as usize).weights());
        }
    }
}
