//! Scalar backends.
//!
//! Every kernel in this crate is generic over [`Real`], which has two
//! realizations: [`Rational`] (arbitrary precision, exact) and `f64`. The
//! exact backend never evaluates a Γ function directly. Kernels are
//! Γ-normalized quotients such as `Γ(n+ν-1) / (Γ(n)·Γ(ν))`, which are
//! rational whenever the order is rational, so the exact backend reduces them
//! to finite products. The float backend evaluates the same quotients through
//! `ln Γ`.
//!
//! [`Scalar`] is the tagged value used at the boundaries (reports, I/O,
//! comparison) where the backend is only known at run time.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number; always normalized (positive denominator, gcd 1).
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a normalized rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Converts an integral rational to `i64`, failing on fractions or overflow.
pub fn rational_to_i64(r: &Rational) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Param(format!("{r} is not an integer")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Param(format!("{r} does not fit in 64 bits")))
}

/// Parses `INT`, `INT/POSINT` or a decimal literal (`-1.25`, `3e-2`) into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num)?;
        let den = parse_int(den)?;
        if !den.is_positive() {
            return Err(Error::parse(format!("denominator of '{s}' must be positive")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("'{s}' is not an integer")));
    }
    BigInt::from_str(t.strip_prefix('+').unwrap_or(t))
        .map_err(|e| Error::parse(format!("'{s}': {e}")))
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::parse(format!("'{s}' is not a number"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Which scalar realization a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::parse(format!(
                "unknown backend '{other}' (expected exact|float)"
            ))),
        }
    }
}

/// Numeric field the operators are generic over.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_scalar(&self) -> Scalar;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// `Γ(x) / (Γ(y)·Γ(z))` for positive arguments.
    ///
    /// The exact backend requires one of `y`, `z` to be a positive integer
    /// and `x` to differ from the other by an integer; the float backend
    /// accepts any positive arguments.
    fn gamma_ratio(x: &Rational, y: &Rational, z: &Rational) -> Result<Self>;

    fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                let b = base.clone();
                base *= &b;
            }
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

fn check_gamma_args(x: &Rational, y: &Rational, z: &Rational) -> Result<()> {
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        if !v.is_positive() {
            return Err(Error::Param(format!(
                "gamma quotient argument {name}={v} must be positive"
            )));
        }
    }
    Ok(())
}

fn exact_gamma_ratio(x: &Rational, y: &Rational, z: &Rational) -> Result<Rational> {
    check_gamma_args(x, y, z)?;
    let (int_arg, other) = if y.is_integer() && (x - z).is_integer() {
        (y, z)
    } else if z.is_integer() && (x - y).is_integer() {
        (z, y)
    } else {
        return Err(Error::UnsupportedNormalization(format!(
            "Γ({x})/(Γ({y})Γ({z})) is not a finite product"
        )));
    };
    // Γ(x)/Γ(other) with x = other + shift
    let shift = rational_to_i64(&(x - other))?;
    let mut q = int(1);
    if shift >= 0 {
        for j in 0..shift {
            q *= other + int(j);
        }
    } else {
        for j in 1..=-shift {
            q /= other - int(j);
        }
    }
    let n = rational_to_i64(int_arg)?;
    let mut fact = BigInt::one();
    for j in 2..n {
        fact *= j;
    }
    Ok(q / Rational::from_integer(fact))
}

impl Real for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        int(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gamma_ratio(x: &Rational, y: &Rational, z: &Rational) -> Result<Self> {
        exact_gamma_ratio(x, y, z)
    }
}

impl Real for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn gamma_ratio(x: &Rational, y: &Rational, z: &Rational) -> Result<Self> {
        check_gamma_args(x, y, z)?;
        let (x, y, z) = (Real::to_f64(x), Real::to_f64(y), Real::to_f64(z));
        Ok((ln_gamma(x) - ln_gamma(y) - ln_gamma(z)).exp())
    }
}

/// `Γ(n+ν-1) / (Γ(n)·Γ(c))`.
///
/// With `c = ν` this is the fractional-sum kernel weight
/// `w_ν(n) = n^{(ν-1) rising} / Γ(ν) = ∏_{j=1}^{n-1} (ν+j-1) / (n-1)!`.
/// The exact backend requires `ν - c` to be an integer.
pub fn normalized_rising<R: Real>(n: i64, nu: &Rational, c: &Rational) -> Result<R> {
    if n < 1 {
        return Err(Error::Domain {
            index: n,
            lo: 1,
            hi: i64::MAX,
        });
    }
    if !nu.is_positive() || !c.is_positive() {
        return Err(Error::Order(format!("orders must be positive, got ν={nu}, c={c}")));
    }
    let x = int(n) + nu - int(1);
    R::gamma_ratio(&x, &int(n), c)
}

/// Tagged scalar value exchanged at run-time boundaries.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact values round to the nearest double.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => Real::to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// `self - other` when both carry the same tag.
    pub fn checked_sub(&self, other: &Scalar) -> Option<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(Scalar::Exact(a - b)),
            (Scalar::Float(a), Scalar::Float(b)) => Some(Scalar::Float(a - b)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => s.serialize_str(&r.to_string()),
            Scalar::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;

        impl serde::de::Visitor<'_> for Visitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a \"p/q\" string or a number")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                parse_rational(v).map(Scalar::Exact).map_err(E::custom)
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v as f64))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v as f64))
            }
            fn visit_unit<E: serde::de::Error>(self) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(f64::NAN))
            }
        }

        d.deserialize_any(Visitor)
    }
}

/// Float comparison contract: `|x-y| <= abs_eps + rel_eps·max(|x|,|y|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rel_eps: f64,
    pub abs_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rel_eps: 1e-9,
            abs_eps: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rel_eps: f64, abs_eps: f64) -> Result<Self> {
        if !(rel_eps > 0.0 && abs_eps > 0.0) {
            return Err(Error::Param(format!(
                "tolerances must be strictly positive (rel={rel_eps}, abs={abs_eps})"
            )));
        }
        Ok(TolerancePolicy { rel_eps, abs_eps })
    }

    pub fn close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.abs_eps + self.rel_eps * x.abs().max(y.abs())
    }

    /// Allowed negative slack for an inequality whose sides have these magnitudes.
    pub fn slack_floor(&self, lhs: f64, rhs: f64) -> f64 {
        -(self.abs_eps + self.rel_eps * lhs.abs().max(rhs.abs()))
    }
}

/// Exact/exact compares for equality; any float side compares under `pol`.
pub fn scalar_close(x: &Scalar, y: &Scalar, pol: &TolerancePolicy) -> bool {
    match (x, y) {
        (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
        _ => pol.close(x.to_f64(), y.to_f64()),
    }
}
