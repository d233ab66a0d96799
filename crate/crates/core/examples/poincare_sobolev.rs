//! Poincaré and Sobolev inequalities with quadratic and general exponents.

use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::ineq::{poincare_report, sobolev_report, Conjugate};
use nablafrac::scalar::{int, rat};

fn main() -> nablafrac::error::Result<()> {
    let f = gen_function(&FunctionSpec {
        a: 1,
        m: 3,
        b: 16,
        zero_initials_from: 0,
        value_range: 9,
        seed: 5,
    })?
    .to_backend::<f64>();
    let mu = "12/5".parse()?;

    for exps in [Conjugate::quadratic(), Conjugate::from_gamma(int(3))?, Conjugate::from_gamma(rat(5, 4))?] {
        let r = poincare_report(&f, 1, 16, &mu, 0, &exps)?;
        println!("poincare γ={} δ={}: {} <= {}", exps.gamma(), exps.delta(), r.lhs, r.rhs);
    }
    for r in [int(1), int(2), rat(7, 2), int(6)] {
        let rep = sobolev_report(&f, 1, 16, &mu, 1, &Conjugate::quadratic(), &r)?;
        println!("sobolev r={r}, p=1: {} <= {} (slack {})", rep.lhs, rep.rhs, rep.slack);
    }
    Ok(())
}
