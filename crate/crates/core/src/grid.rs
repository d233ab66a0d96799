//! Grid functions on finite integer intervals, integer-order nabla and delta
//! differences, and factorial powers.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{gamma, int, ln_gamma, rational_to_i64, Rational, Real, Scalar};

/// A closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDomain {
    lo: i64,
    hi: i64,
}

impl GridDomain {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::EmptyRange {
                what: "grid domain",
                lower: lo,
                upper: hi,
            });
        }
        Ok(GridDomain { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: i64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn points(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

/// Values of a function on a contiguous integer interval.
///
/// Operators never extend a grid function by zero: reading outside the domain
/// is an [`Error::Domain`] naming the missing index.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<R> {
    lo: i64,
    values: Vec<R>,
}

impl<R> GridFunction<R> {
    pub fn new(lo: i64, values: Vec<R>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyRange {
                what: "grid function values",
                lower: lo,
                upper: lo - 1,
            });
        }
        Ok(GridFunction { lo, values })
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> R) -> Result<Self> {
        let dom = GridDomain::new(lo, hi)?;
        Ok(GridFunction {
            lo,
            values: dom.points().map(f).collect(),
        })
    }

    pub fn try_from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> Result<R>) -> Result<Self> {
        let dom = GridDomain::new(lo, hi)?;
        Ok(GridFunction {
            lo,
            values: dom.points().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn domain(&self) -> GridDomain {
        GridDomain {
            lo: self.lo,
            hi: self.hi(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn get(&self, t: i64) -> Result<&R> {
        if t < self.lo || t > self.hi() {
            return Err(Error::Domain {
                index: t,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        Ok(&self.values[(t - self.lo) as usize])
    }

    /// Fails with the first uncovered index if `[lo, hi]` is not inside the domain.
    pub fn require(&self, lo: i64, hi: i64) -> Result<()> {
        if lo < self.lo {
            self.get(lo)?;
        }
        if hi > self.hi() {
            self.get(hi)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        (self.lo..).zip(self.values.iter())
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> GridFunction<S> {
        GridFunction {
            lo: self.lo,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<R: Clone> GridFunction<R> {
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        GridDomain::new(lo, hi)?;
        self.require(lo, hi)?;
        let start = (lo - self.lo) as usize;
        let end = (hi - self.lo) as usize;
        Ok(GridFunction {
            lo,
            values: self.values[start..=end].to_vec(),
        })
    }
}

impl<R: Real> GridFunction<R> {
    pub fn constant(lo: i64, hi: i64, c: R) -> Result<Self> {
        Self::from_fn(lo, hi, |_| c.clone())
    }
}

impl GridFunction<Rational> {
    /// Converts exact values into another backend.
    pub fn to_backend<R: Real>(&self) -> GridFunction<R> {
        self.map(R::from_rational)
    }
}

/// Binomial coefficient `C(n, k)` for `0 <= k <= n`.
pub fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as i128;
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n as i128 - j) / (j + 1);
    }
    acc as i64
}

/// `∇^k f(t) = Σ_{i=0}^{k} (-1)^i C(k,i) f(t-i)`.
pub fn nabla<R: Real>(f: &GridFunction<R>, t: i64, k: u32) -> Result<R> {
    f.require(t - k as i64, t)?;
    let mut acc = R::zero();
    for i in 0..=k {
        let c = R::from_i64(binomial(k, i));
        let term = c * f.get(t - i as i64)?.clone();
        if i % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    Ok(acc)
}

/// `Δ^k f(t) = Σ_{j=0}^{k} C(k,j) (-1)^{k-j} f(t+j)`.
pub fn delta<R: Real>(f: &GridFunction<R>, t: i64, k: u32) -> Result<R> {
    f.require(t, t + k as i64)?;
    let mut acc = R::zero();
    for j in 0..=k {
        let term = R::from_i64(binomial(k, j)) * f.get(t + j as i64)?.clone();
        if (k - j).is_multiple_of(2) {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    Ok(acc)
}

/// `∇^k f` evaluated at every point of `[lo, hi]`.
pub fn nabla_series<R: Real>(f: &GridFunction<R>, lo: i64, hi: i64, k: u32) -> Result<GridFunction<R>> {
    GridFunction::try_from_fn(lo, hi, |t| nabla(f, t, k))
}

/// Rising factorial `t^{(α) rising} = Γ(t+α)/Γ(t)` at a non-negative integer `t`.
///
/// `α = 0` gives 1 for every `t`; otherwise `0^{(α)} = 0`. Non-negative integer
/// orders are exact products, other orders go through `ln Γ` and return a
/// float.
pub fn rising_factorial(t: i64, alpha: &Rational) -> Result<Scalar> {
    if t < 0 {
        return Err(Error::Param(format!("rising factorial needs t >= 0, got {t}")));
    }
    if alpha.is_integer() && !alpha.is_negative() {
        let n = rational_to_i64(alpha)?;
        let mut acc = int(1);
        for j in 0..n {
            acc *= int(t + j);
        }
        return Ok(Scalar::Exact(acc));
    }
    if t == 0 {
        return Ok(Scalar::Exact(int(0)));
    }
    let top = int(t) + alpha;
    if !top.is_positive() {
        return Err(Error::Param(format!(
            "rising factorial {t}^({alpha}) needs Γ at non-positive argument {top}"
        )));
    }
    Ok(Scalar::Float(gamma_quotient_f64(Real::to_f64(&top), t as f64)))
}

/// Falling factorial `t^{(α)} = Γ(t+1)/Γ(t+1-α)` at a non-negative integer `t`.
pub fn falling_factorial(t: i64, alpha: &Rational) -> Result<Scalar> {
    if t < 0 {
        return Err(Error::Param(format!("falling factorial needs t >= 0, got {t}")));
    }
    let bottom = int(t + 1) - alpha;
    if bottom.is_integer() && !bottom.is_positive() {
        return Err(Error::Domain {
            index: rational_to_i64(&bottom)?,
            lo: 1,
            hi: i64::MAX,
        });
    }
    if alpha.is_integer() && !alpha.is_negative() {
        let n = rational_to_i64(alpha)?;
        let mut acc = int(1);
        for j in 0..n {
            acc *= int(t - j);
        }
        return Ok(Scalar::Exact(acc));
    }
    if bottom.is_negative() {
        return Err(Error::Param(format!(
            "falling factorial {t}^({alpha}) needs Γ at negative argument {bottom}"
        )));
    }
    Ok(Scalar::Float(gamma_quotient_f64(
        (t + 1) as f64,
        Real::to_f64(&bottom),
    )))
}

fn gamma_quotient_f64(num: f64, den: f64) -> f64 {
    if num < 150.0 && den < 150.0 {
        gamma(num) / gamma(den)
    } else {
        (ln_gamma(num) - ln_gamma(den)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn power(exp: u32, lo: i64, hi: i64) -> GridFunction<Rational> {
        GridFunction::from_fn(lo, hi, |t| int(t.pow(exp))).unwrap()
    }

    #[test]
    fn nabla_examples() {
        let sq = power(2, -2, 5);
        assert_eq!(nabla(&sq, 3, 1).unwrap(), int(5));
        assert_eq!(nabla(&sq, 3, 2).unwrap(), int(2));
        assert_eq!(nabla(&sq, 3, 0).unwrap(), int(9));
        let cube = power(3, -2, 5);
        assert_eq!(nabla(&cube, 0, 2).unwrap(), int(-6));
    }

    #[test]
    fn delta_examples() {
        let sq = power(2, -2, 5);
        assert_eq!(delta(&sq, 2, 1).unwrap(), int(5));
        assert_eq!(delta(&sq, 1, 2).unwrap(), int(2));
        let cube = power(3, -2, 5);
        assert_eq!(delta(&cube, 0, 3).unwrap(), int(6));
        assert_eq!(nabla(&cube, 3, 3).unwrap(), int(6));
    }

    #[test]
    fn out_of_domain_names_index() {
        let sq = power(2, -2, 5);
        assert_eq!(
            nabla(&sq, -1, 2),
            Err(Error::Domain { index: -3, lo: -2, hi: 5 })
        );
        assert_eq!(delta(&sq, 4, 2), Err(Error::Domain { index: 6, lo: -2, hi: 5 }));
    }

    #[test]
    fn nabla_of_constant_vanishes() {
        let c = GridFunction::constant(0, 10, rat(7, 3)).unwrap();
        for k in 1..5 {
            assert_eq!(nabla(&c, 10, k).unwrap(), int(0));
        }
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(3, &int(2)).unwrap(), Scalar::Exact(int(12)));
        assert_eq!(rising_factorial(0, &rat(1, 2)).unwrap(), Scalar::Exact(int(0)));
        assert_eq!(rising_factorial(5, &int(0)).unwrap(), Scalar::Exact(int(1)));
        // 1^{(3/2)} = Γ(5/2)
        let v = rising_factorial(1, &rat(3, 2)).unwrap().to_f64();
        assert!((v - 1.329_340_388_179_137).abs() < 1e-12);
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling_factorial(4, &int(2)).unwrap(), Scalar::Exact(int(12)));
        assert_eq!(falling_factorial(3, &int(0)).unwrap(), Scalar::Exact(int(1)));
        assert_eq!(falling_factorial(3, &int(3)).unwrap(), Scalar::Exact(int(6)));
        assert!(matches!(falling_factorial(3, &int(5)), Err(Error::Domain { .. })));
    }

    #[test]
    fn rising_is_shifted_falling() {
        for t in 1..20 {
            for alpha in [rat(1, 2), rat(5, 2), rat(7, 3), int(3)] {
                let r = rising_factorial(t, &alpha).unwrap().to_f64();
                // t^{α rising} = (t+α-1)^{(α)}; for integer α the shift is an integer
                if alpha.is_integer() {
                    let shifted = t + rational_to_i64(&alpha).unwrap() - 1;
                    let f = falling_factorial(shifted, &alpha).unwrap().to_f64();
                    assert_eq!(r, f);
                } else {
                    let x = Real::to_f64(&(int(t) + &alpha - int(1)));
                    let f = gamma(x + 1.0) / gamma(x + 1.0 - Real::to_f64(&alpha));
                    assert!((r - f).abs() <= 1e-12 * r.abs());
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn restrict_and_require() {
        let sq = power(2, -2, 5);
        let r = sq.restrict(0, 2).unwrap();
        assert_eq!(r.values(), &[int(0), int(1), int(4)]);
        assert!(sq.restrict(4, 7).is_err());
        assert!(GridFunction::<Rational>::new(0, vec![]).is_err());
        assert!(GridDomain::new(3, 2).is_err());
    }
}
