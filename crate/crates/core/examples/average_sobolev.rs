//! Sobolev inequality averaged over several fractional orders.

use nablafrac::grid::GridFunction;
use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::ineq::avg_sobolev_report;
use nablafrac::scalar::{int, rat, Rational};

fn main() -> nablafrac::error::Result<()> {
    let (a, b) = (0, 14);
    let f = gen_function(&FunctionSpec {
        a,
        m: 3,
        b,
        zero_initials_from: 0,
        value_range: 6,
        seed: 314,
    })?;
    let orders = vec!["3/4".parse()?, "3/2".parse()?, "5/2".parse()?];
    let weights: Vec<GridFunction<Rational>> = (0..orders.len() as i64)
        .map(|l| GridFunction::from_fn(a + 1, b, |t| rat(5 + (t + l) % 7, 8)))
        .collect::<Result<_, _>>()?;

    for r in [int(2), int(4), rat(5, 2)] {
        let rep = avg_sobolev_report(&f, a, b, &orders, &weights, &r)?;
        println!("r={r}: {} <= {} holds={}", rep.lhs, rep.rhs, rep.holds);
        println!("  B = {:?}", rep.array_of("B").unwrap().iter().map(|s| s.to_string()).collect::<Vec<_>>());
        println!("  δ* = {}, ρ* = {}", rep.number_of("delta_star").unwrap(), rep.number_of("rho_star").unwrap());
    }
    Ok(())
}
