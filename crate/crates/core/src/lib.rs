//! Discrete nabla fractional calculus with exact verification.
//!
//! Operators are generic over [`scalar::Real`], implemented for big rationals
//! (exact) and `f64` (float). Kernel weights are rational functions of the
//! order, so sums, Caputo differences and Taylor formulas can be checked with
//! zero defect on the exact backend.
//!
//! - [`grid`]: grid functions, `∇`/`Δ` differences, factorial powers
//! - [`frac`]: fractional sums and Caputo-like differences
//! - [`taylor`]: Taylor formulas, closed forms, remainder estimate
//! - [`ineq`]: Opial, Ostrowski, Poincaré, Sobolev and averaged Sobolev reports
//! - [`harness`]: seeded generators, randomized suites, file formats
//! - [`cli`]: the `nablafrac` command line
//!
//! ```
//! use nablafrac::frac::frac_sum;
//! use nablafrac::grid::GridFunction;
//! use nablafrac::scalar::{int, rat};
//!
//! let ones = GridFunction::constant(0, 2, int(1)).unwrap();
//! let half = "1/2".parse().unwrap();
//! assert_eq!(frac_sum(&ones, 0, &half, 2).unwrap(), rat(15, 8));
//! ```

pub mod cli;
pub mod error;
pub mod frac;
pub mod grid;
pub mod harness;
pub mod ineq;
pub mod scalar;
pub mod taylor;
