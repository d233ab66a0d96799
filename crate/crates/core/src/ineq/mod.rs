//! Evaluators for the Opial, Ostrowski, Poincaré, Sobolev and average
//! Sobolev inequalities.
//!
//! Every evaluator checks the vanishing initial differences it relies on,
//! computes both sides with all kernel factors in normalized form
//! (`w_ν(n) = n^{(ν-1) rising}/Γ(ν)`), and returns an [`InequalityReport`].
//! Roots and non-integer powers are taken in `f64`; when the exponents make
//! the comparison rational (γ = δ = 2, even `r`) and the backend is exact, a
//! root-free [`ExactComparison`] is attached as well.

mod opial;
mod ostrowski;
mod report;
mod sobolev;

pub use opial::{opial_corollary_25, opial_report, GVariant, OpialParams};
pub use ostrowski::ostrowski_report;
pub use report::{Component, ExactComparison, InequalityReport};
pub use sobolev::{avg_sobolev_report, poincare_report, r_norm, sobolev_report};

use crate::error::{Error, Result};
use crate::frac::{FractionalOrder, KernelRow};
use crate::grid::{nabla, GridFunction};
use crate::scalar::{int, Rational, Real, Scalar, TolerancePolicy};

/// Hölder exponents `γ, δ > 1` with `1/γ + 1/δ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugate {
    gamma: Rational,
    delta: Rational,
}

impl Conjugate {
    pub fn new(gamma: Rational, delta: Rational) -> Result<Self> {
        check_exponent("gamma", &gamma)?;
        check_exponent("delta", &delta)?;
        if gamma.recip() + delta.recip() != int(1) {
            return Err(Error::Param(format!(
                "1/gamma + 1/delta must equal 1 (gamma={gamma}, delta={delta})"
            )));
        }
        Ok(Conjugate { gamma, delta })
    }

    /// Accepts a pair whose conjugacy holds only within `pol` (e.g. decimal
    /// input like `1.5, 2.9999999999`); `δ` is replaced by `γ/(γ-1)`.
    pub fn approx(gamma: Rational, delta: Rational, pol: &TolerancePolicy) -> Result<Self> {
        check_exponent("gamma", &gamma)?;
        check_exponent("delta", &delta)?;
        let sum = Real::to_f64(&gamma.recip()) + Real::to_f64(&delta.recip());
        if !pol.close(sum, 1.0) {
            return Err(Error::Param(format!(
                "1/gamma + 1/delta = {sum}, expected 1 (gamma={gamma}, delta={delta})"
            )));
        }
        Self::from_gamma(gamma)
    }

    pub fn from_gamma(gamma: Rational) -> Result<Self> {
        check_exponent("gamma", &gamma)?;
        let delta = &gamma / (&gamma - int(1));
        Ok(Conjugate { gamma, delta })
    }

    pub fn quadratic() -> Self {
        Conjugate {
            gamma: int(2),
            delta: int(2),
        }
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn is_quadratic(&self) -> bool {
        self.gamma == int(2)
    }

    fn gamma_f64(&self) -> f64 {
        Real::to_f64(&self.gamma)
    }

    fn delta_f64(&self) -> f64 {
        Real::to_f64(&self.delta)
    }
}

impl Default for Conjugate {
    fn default() -> Self {
        Self::quadratic()
    }
}

fn check_exponent(name: &str, v: &Rational) -> Result<()> {
    if *v <= int(1) {
        return Err(Error::Param(format!("{name}={v} must exceed 1")));
    }
    Ok(())
}

/// `∇^k f(a) = 0` for every `k` in `ks`.
pub fn check_boundary<R: Real>(f: &GridFunction<R>, a: i64, ks: std::ops::Range<u32>) -> Result<()> {
    for k in ks {
        let v = nabla(f, a, k)?;
        if !v.is_zero() {
            return Err(Error::Boundary {
                k,
                a,
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

fn require_base(a: i64) -> Result<()> {
    if a < 0 {
        return Err(Error::Param(format!("base point a={a} must be non-negative")));
    }
    Ok(())
}

/// `b > a + m`, reported as a window error otherwise.
fn require_interval(a: i64, m: u32, b: i64) -> Result<()> {
    if b <= a + m as i64 {
        return Err(Error::Window {
            t: b,
            min: a + m as i64 + 1,
        });
    }
    Ok(())
}

fn require_r(r: &Rational) -> Result<()> {
    if *r < int(1) {
        return Err(Error::Param(format!("r={r} must be at least 1")));
    }
    Ok(())
}

/// `r` as a `u32` when it is an even integer, enabling a root-free comparison.
fn even_power(r: &Rational) -> Option<u32> {
    if !r.is_integer() {
        return None;
    }
    let v = r.to_integer();
    let v: u32 = v.try_into().ok()?;
    (v.is_multiple_of(2) && v > 0).then_some(v)
}

/// `x^e` for `x >= 0`; squares are multiplied out.
fn fpow(x: f64, e: f64) -> f64 {
    if e == 2.0 {
        x * x
    } else if e == 1.0 {
        x
    } else {
        x.powf(e)
    }
}

/// Prefix sums `S(n) = Σ_{i=1}^{n} w(i)^γ` for `n = 0..=len`, in `f64`.
fn kernel_power_sums<R: Real>(row: &KernelRow<R>, gamma: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = 0.0;
    out.push(acc);
    for n in 1..=len {
        acc += fpow(row.weight(n as i64).to_f64(), gamma);
        out.push(acc);
    }
    out
}

/// Prefix sums `Σ_{i=1}^{n} w(i)^2` in the backend field.
fn kernel_square_sums<R: Real>(row: &KernelRow<R>, len: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = R::zero();
    out.push(acc.clone());
    for n in 1..=len {
        let w = row.weight(n as i64);
        acc += &(w.clone() * w.clone());
        out.push(acc.clone());
    }
    out
}

fn float_series<R: Real>(g: &GridFunction<R>) -> Vec<Scalar> {
    g.values().iter().map(|v| Scalar::Float(v.to_f64())).collect()
}

fn exact_series<R: Real>(g: &GridFunction<R>) -> Vec<Scalar> {
    g.values().iter().map(R::to_scalar).collect()
}

fn order_param(mu: &FractionalOrder) -> String {
    mu.to_string()
}
