//! Discrete Taylor representations (integer and fractional order), closed
//! forms of their kernel sums, remainder bounds, and the inverse construction
//! of a grid function from its Taylor data.

use crate::error::{Error, Result};
use crate::frac::{caputo_series, FractionalOrder, KernelRow};
use crate::grid::{binomial, nabla, GridFunction};
use crate::scalar::{int, normalized_rising, Rational, Real};

/// `x^{(k) rising} / k! = x(x+1)…(x+k-1)/k!` for any integer `x`.
pub fn rising_poly(x: i64, k: u32) -> Rational {
    let mut acc = int(1);
    for j in 0..k as i64 {
        acc *= int(x + j);
        acc /= int(j + 1);
    }
    acc
}

/// The two parts of a Taylor representation of `∇^p f(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorExpansion<R> {
    pub base: i64,
    /// `m` for integer expansions, `μ` otherwise.
    pub order: Rational,
    pub p: u32,
    pub t: i64,
    pub poly_part: R,
    pub remainder: R,
    pub total: R,
    /// `∇^p f(t)` evaluated directly from the grid.
    pub direct: R,
}

impl<R: Real> TaylorExpansion<R> {
    /// `total - direct`; zero whenever the representation holds.
    pub fn defect(&self) -> R {
        self.total.clone() - self.direct.clone()
    }
}

enum Remainder<'a> {
    Integer,
    Caputo(&'a FractionalOrder),
}

#[allow(clippy::too_many_arguments)]
fn expand<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    m: u32,
    p: u32,
    kernel: &FractionalOrder,
    rem: Remainder<'_>,
    order: Rational,
    t: i64,
) -> Result<TaylorExpansion<R>> {
    if t < a + m as i64 {
        return Err(Error::Window {
            t,
            min: a + m as i64,
        });
    }
    f.require(a - m as i64 + 1, t)?;

    let mut poly_part = R::zero();
    for k in p..m {
        let coeff = R::from_rational(&rising_poly(t - a, k - p));
        poly_part += &(coeff * nabla(f, a, k)?);
    }

    let driver = match rem {
        Remainder::Integer => GridFunction::try_from_fn(a + 1, t, |tau| nabla(f, tau, m))?,
        Remainder::Caputo(mu) => caputo_series(f, a + 1, mu, t)?,
    };
    let row = KernelRow::<R>::new(kernel, (t - a) as usize);
    let mut remainder = R::zero();
    for tau in a + 1..=t {
        remainder += &(row.weight(t - tau + 1).clone() * driver.get(tau)?.clone());
    }

    Ok(TaylorExpansion {
        base: a,
        order,
        p,
        t,
        total: poly_part.clone() + remainder.clone(),
        poly_part,
        remainder,
        direct: nabla(f, t, p)?,
    })
}

/// Integer-order discrete Taylor formula of order `m` about `a`, valid for `t >= a+m`.
pub fn taylor_integer<R: Real>(f: &GridFunction<R>, a: i64, m: u32, t: i64) -> Result<TaylorExpansion<R>> {
    if m == 0 {
        return Err(Error::Order("integer Taylor order must be at least 1".into()));
    }
    let kernel = FractionalOrder::new(int(m as i64))?;
    expand(f, a, m, 0, &kernel, Remainder::Integer, int(m as i64), t)
}

/// Fractional Taylor formula: polynomial part of degree `m-1` plus a
/// remainder driven by `∇_{(a+1)*}^{μ} f` with kernel `w_μ`.
pub fn taylor_fractional<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    mu: &FractionalOrder,
    t: i64,
) -> Result<TaylorExpansion<R>> {
    let mu = mu.clone().require_non_integer()?;
    expand(f, a, mu.ceil(), 0, &mu, Remainder::Caputo(&mu), mu.value().clone(), t)
}

/// Extended fractional Taylor formula for `∇^p f(t)`, `0 <= p < μ`, base `a >= 0`.
pub fn taylor_extended<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    mu: &FractionalOrder,
    p: u32,
    t: i64,
) -> Result<TaylorExpansion<R>> {
    let mu = mu.clone().require_non_integer()?;
    if a < 0 {
        return Err(Error::Param(format!("extended Taylor formula needs a >= 0, got {a}")));
    }
    let kernel = mu.minus(p)?;
    expand(f, a, mu.ceil(), p, &kernel, Remainder::Caputo(&mu), mu.value().clone(), t)
}

/// `Σ_{n=1}^{t-a} w_μ(n) = (t-a)^{(μ) rising} / Γ(μ+1)`.
pub fn kernel_sum_closed_form<R: Real>(a: i64, mu: &FractionalOrder, t: i64) -> Result<R> {
    if t <= a {
        return Err(Error::EmptyRange {
            what: "kernel sum",
            lower: a + 1,
            upper: t,
        });
    }
    let shifted = mu.plus_int(1);
    normalized_rising(t - a, shifted.value(), shifted.value())
}

/// `Σ_{j=a+m+1}^{b} (j-a)^{(ν) rising} / Γ(ν+1)`, in the telescoped form
/// `[(b-a)^{(ν+1) rising} - m^{(ν+1) rising}] / Γ(ν+2)`.
pub fn sum_rising_closed_form<R: Real>(a: i64, m: u32, b: i64, nu: &FractionalOrder) -> Result<R> {
    if b <= a + m as i64 {
        return Err(Error::EmptyRange {
            what: "rising-power sum",
            lower: a + m as i64 + 1,
            upper: b,
        });
    }
    if m == 0 {
        return Err(Error::Param("rising-power sum needs m >= 1".into()));
    }
    let c = nu.plus_int(2);
    let top: R = normalized_rising(b - a, c.value(), c.value())?;
    let bottom: R = normalized_rising(m as i64, c.value(), c.value())?;
    Ok(top - bottom)
}

/// Both sides of the remainder estimate for the (extended) fractional Taylor formula.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderBound<R> {
    /// `|∇^p f(t) - poly_part|`
    pub lhs: R,
    /// `coefficient · max_caputo`
    pub rhs: R,
    /// `(t-a)^{(μ-p) rising} / Γ(μ-p+1)`
    pub coefficient: R,
    /// `max_{τ ∈ [a+1, t]} |∇_{(a+1)*}^{μ} f(τ)|`
    pub max_caputo: R,
}

impl<R: Real> RemainderBound<R> {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

pub fn remainder_bound<R: Real>(
    f: &GridFunction<R>,
    a: i64,
    mu: &FractionalOrder,
    p: u32,
    t: i64,
) -> Result<RemainderBound<R>> {
    let exp = taylor_extended(f, a, mu, p, t)?;
    let caputo = caputo_series(f, a + 1, mu, t)?;
    let max_caputo = caputo
        .values()
        .iter()
        .map(R::abs)
        .fold(R::zero(), R::max_of);
    let coefficient: R = kernel_sum_closed_form(a, &mu.minus(p)?, t)?;
    Ok(RemainderBound {
        lhs: (exp.direct - exp.poly_part).abs(),
        rhs: coefficient.clone() * max_caputo.clone(),
        coefficient,
        max_caputo,
    })
}

/// Taylor data about `a`: the initial differences `∇^k f(a)` for `k < m` and
/// the values of `∇^m f` on `[a+1, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeed<R> {
    a: i64,
    m: u32,
    initial: Vec<R>,
    h: GridFunction<R>,
}

impl<R: Real> TaylorSeed<R> {
    pub fn new(a: i64, m: u32, initial: Vec<R>, h: GridFunction<R>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Param("Taylor seed needs m >= 1".into()));
        }
        if initial.len() != m as usize {
            return Err(Error::Param(format!(
                "Taylor seed needs {m} initial differences, got {}",
                initial.len()
            )));
        }
        if h.lo() != a + 1 {
            return Err(Error::Param(format!(
                "Taylor seed driver must start at a+1 = {}, starts at {}",
                a + 1,
                h.lo()
            )));
        }
        Ok(TaylorSeed { a, m, initial, h })
    }

    /// Reads the seed of `f` about `a` on `[a+1, f.hi()]`.
    pub fn extract(f: &GridFunction<R>, a: i64, m: u32) -> Result<Self> {
        let initial = (0..m).map(|k| nabla(f, a, k)).collect::<Result<Vec<_>>>()?;
        let h = GridFunction::try_from_fn(a + 1, f.hi(), |t| nabla(f, t, m))?;
        Self::new(a, m, initial, h)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn b(&self) -> i64 {
        self.h.hi()
    }

    pub fn initial(&self) -> &[R] {
        &self.initial
    }

    pub fn driver(&self) -> &GridFunction<R> {
        &self.h
    }
}

fn signed<R: Real>(coeff: i64, negative: bool) -> R {
    R::from_i64(if negative { -coeff } else { coeff })
}

/// Builds `f` on `[a-m+1, b]` from its Taylor data.
///
/// The left tail solves the lower-triangular system
/// `∇^k f(a) = Σ_{i<=k} (-1)^i C(k,i) f(a-i)` for `f(a-k)`; the rest unrolls
/// `f(t) = h(t) - Σ_{i=1}^{m} (-1)^i C(m,i) f(t-i)`.
pub fn construct_from_taylor_data<R: Real>(seed: &TaylorSeed<R>) -> Result<GridFunction<R>> {
    let m = seed.m;
    let a = seed.a;
    let len = (seed.b() - a + m as i64) as usize;
    // values[i] = f(a - m + 1 + i); the tail is filled right to left
    let mut values = vec![R::zero(); len];
    let at = |t: i64| (t - (a - m as i64 + 1)) as usize;

    for k in 0..m {
        let mut rhs = seed.initial[k as usize].clone();
        for i in 0..k {
            let c: R = signed(binomial(k, i), i % 2 == 1);
            rhs -= &(c * values[at(a - i as i64)].clone());
        }
        values[at(a - k as i64)] = if k % 2 == 0 { rhs } else { -rhs };
    }

    for t in a + 1..=seed.b() {
        let mut v = seed.h.get(t)?.clone();
        for i in 1..=m {
            let c: R = signed(binomial(m, i), i % 2 == 1);
            v -= &(c * values[at(t - i as i64)].clone());
        }
        values[at(t)] = v;
    }
    GridFunction::new(a - m as i64 + 1, values)
}

/// Same grid function as [`construct_from_taylor_data`], built independently:
/// the left tail by binomial inversion `f(a-j) = Σ_k (-1)^k C(j,k) ∇^k f(a)`,
/// the rest by evaluating the integer Taylor formula at each `t`.
pub fn construct_via_taylor_formula<R: Real>(seed: &TaylorSeed<R>) -> Result<GridFunction<R>> {
    let m = seed.m;
    let a = seed.a;
    let kernel = KernelRow::<R>::new(&FractionalOrder::new(int(m as i64))?, (seed.b() - a) as usize);
    GridFunction::try_from_fn(a - m as i64 + 1, seed.b(), |t| {
        if t <= a {
            let j = (a - t) as u32;
            let mut v = R::zero();
            for k in 0..=j {
                let c: R = signed(binomial(j, k), k % 2 == 1);
                v += &(c * seed.initial[k as usize].clone());
            }
            return Ok(v);
        }
        let mut v = R::zero();
        for (k, init) in seed.initial.iter().enumerate() {
            v += &(R::from_rational(&rising_poly(t - a, k as u32)) * init.clone());
        }
        for tau in a + 1..=t {
            v += &(kernel.weight(t - tau + 1).clone() * seed.h.get(tau)?.clone());
        }
        Ok(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn order(s: &str) -> FractionalOrder {
        s.parse().unwrap()
    }

    fn poly(lo: i64, hi: i64, e: u32) -> GridFunction<Rational> {
        GridFunction::from_fn(lo, hi, |t| int(t.pow(e))).unwrap()
    }

    #[test]
    fn integer_taylor_examples() {
        let sq = poly(-1, 4, 2);
        let e = taylor_integer(&sq, 0, 2, 4).unwrap();
        assert_eq!(e.total, int(16));

        let cube = poly(-2, 3, 3);
        let e = taylor_integer(&cube, 0, 3, 3).unwrap();
        assert_eq!((e.poly_part.clone(), e.remainder.clone()), (int(-33), int(60)));
        assert_eq!(e.total, int(27));

        let c = GridFunction::constant(-4, 9, rat(-5, 3)).unwrap();
        let e = taylor_integer(&c, 0, 4, 9).unwrap();
        assert_eq!((e.poly_part, e.remainder), (rat(-5, 3), int(0)));
    }

    #[test]
    fn fractional_taylor_examples() {
        let cube = poly(-2, 3, 3);
        let e = taylor_fractional(&cube, 0, &order("5/2"), 3).unwrap();
        assert_eq!(e.poly_part, int(-33));
        assert_eq!(e.remainder, int(60));
        assert_eq!(e.total, int(27));

        let sq = poly(-2, 4, 2);
        let e = taylor_fractional(&sq, 0, &order("5/2"), 4).unwrap();
        assert_eq!(e.remainder, int(0));
        assert_eq!(e.total, int(16));

        let zero = GridFunction::constant(-2, 6, int(0)).unwrap();
        let e = taylor_fractional(&zero, 0, &order("7/3"), 6).unwrap();
        assert_eq!((e.poly_part, e.remainder, e.total), (int(0), int(0), int(0)));
    }

    #[test]
    fn window_and_order_errors() {
        let cube = poly(-2, 3, 3);
        assert_eq!(
            taylor_fractional(&cube, 0, &order("5/2"), 2),
            Err(Error::Window { t: 2, min: 3 })
        );
        assert!(matches!(taylor_fractional(&cube, 0, &order("2"), 3), Err(Error::Order(_))));
        assert!(matches!(
            taylor_extended(&cube, 0, &order("5/2"), 3, 3),
            Err(Error::Order(_))
        ));
        assert!(matches!(
            taylor_extended(&poly(-5, 3, 3), -3, &order("5/2"), 0, 3),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn extended_taylor_examples() {
        let cube = poly(-2, 4, 3);
        let mu = order("5/2");
        let e = taylor_extended(&cube, 0, &mu, 1, 4).unwrap();
        assert_eq!(e.total, int(37));
        assert_eq!(e.direct, int(37));
        assert_eq!(
            taylor_extended(&cube, 0, &mu, 0, 4).unwrap(),
            taylor_fractional(&cube, 0, &mu, 4).unwrap()
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(kernel_sum_closed_form::<Rational>(0, &order("1/2"), 3).unwrap(), rat(15, 8));
        assert_eq!(kernel_sum_closed_form::<Rational>(4, &order("7/3"), 5).unwrap(), int(1));
        assert_eq!(kernel_sum_closed_form::<Rational>(0, &order("1"), 5).unwrap(), int(5));
        assert!(kernel_sum_closed_form::<Rational>(2, &order("1/2"), 2).is_err());

        assert_eq!(sum_rising_closed_form::<Rational>(0, 1, 3, &order("1")).unwrap(), int(5));
        assert_eq!(
            sum_rising_closed_form::<Rational>(0, 3, 5, &order("5/2")).unwrap(),
            rat(4851, 128)
        );
        assert!(sum_rising_closed_form::<Rational>(0, 3, 3, &order("5/2")).is_err());
    }

    #[test]
    fn remainder_bound_examples() {
        let cube = poly(-2, 3, 3);
        let rb = remainder_bound(&cube, 0, &order("5/2"), 0, 3).unwrap();
        assert_eq!(rb.lhs, int(60));
        assert_eq!(rb.coefficient, rat(63, 8));
        assert_eq!(rb.max_caputo, rat(45, 4));
        assert_eq!(rb.rhs, rat(2835, 32));
        assert!(rb.holds());

        let sq = poly(-2, 7, 2);
        for t in 3..=7 {
            let rb = remainder_bound(&sq, 0, &order("5/2"), 0, t).unwrap();
            assert_eq!((rb.lhs, rb.rhs), (int(0), int(0)));
        }
    }

    #[test]
    fn construct_examples() {
        let zero = TaylorSeed::new(0, 2, vec![int(0), int(0)], GridFunction::constant(1, 6, int(0)).unwrap())
            .unwrap();
        let f = construct_from_taylor_data(&zero).unwrap();
        assert!(f.values().iter().all(|v| *v == int(0)));
        assert_eq!((f.lo(), f.hi()), (-1, 6));

        let seed = TaylorSeed::new(0, 2, vec![int(0), int(0)], GridFunction::constant(1, 6, int(1)).unwrap())
            .unwrap();
        let f = construct_from_taylor_data(&seed).unwrap();
        assert_eq!(*f.get(-1).unwrap(), int(0));
        for t in 0..=6 {
            assert_eq!(*f.get(t).unwrap(), int(t * (t + 1) / 2));
        }
        assert_eq!(construct_via_taylor_formula(&seed).unwrap(), f);
    }

    #[test]
    fn seed_round_trip() {
        let f = GridFunction::new(-3, [3, -1, 4, 1, -5, 9, 2, -6, 5, 3].map(int).to_vec()).unwrap();
        let seed = TaylorSeed::extract(&f, 0, 4).unwrap();
        assert_eq!(construct_from_taylor_data(&seed).unwrap(), f);
        assert_eq!(construct_via_taylor_formula(&seed).unwrap(), f);
    }

    #[test]
    fn seed_shape_checks() {
        let h = GridFunction::constant(1, 4, int(0)).unwrap();
        assert!(TaylorSeed::new(0, 2, vec![int(0)], h.clone()).is_err());
        assert!(TaylorSeed::new(1, 1, vec![int(0)], h.clone()).is_err());
        assert!(TaylorSeed::new(0, 0, vec![], h).is_err());
    }
}
