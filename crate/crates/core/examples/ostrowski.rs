//! Ostrowski-type bound on the deviation from the base value.

use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::ineq::ostrowski_report;

fn main() -> nablafrac::error::Result<()> {
    for (mu, p) in [("5/2", 0), ("11/4", 1), ("7/2", 2)] {
        let mu = mu.parse()?;
        let f = gen_function(&FunctionSpec {
            a: 2,
            m: 4,
            b: 20,
            zero_initials_from: p + 1,
            value_range: 9,
            seed: 99,
        })?;
        let r = ostrowski_report(&f, 2, 20, &mu, p)?;
        println!(
            "mu={mu} p={p}: |mean - base| = {} <= {} (coefficient {}, max caputo {})",
            r.lhs,
            r.rhs,
            r.number_of("coefficient").unwrap(),
            r.number_of("max_caputo").unwrap()
        );
    }
    Ok(())
}
