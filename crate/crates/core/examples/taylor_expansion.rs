//! Integer, fractional and extended Taylor formulas, and the remainder estimate.

use nablafrac::frac::FractionalOrder;
use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::scalar::{Rational, Real};
use nablafrac::taylor::{remainder_bound, taylor_extended, taylor_fractional, taylor_integer};

fn main() -> nablafrac::error::Result<()> {
    let mu: FractionalOrder = "8/3".parse()?;
    let f = gen_function(&FunctionSpec {
        a: 1,
        m: 3,
        b: 12,
        zero_initials_from: 3,
        value_range: 9,
        seed: 2024,
    })?;
    println!("f on [{}, {}]: {:?}", f.lo(), f.hi(), f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>());

    for t in 4..=12 {
        let frac = taylor_fractional(&f, 1, &mu, t)?;
        let int3 = taylor_integer(&f, 1, 3, t)?;
        let ext = taylor_extended(&f, 1, &mu, 1, t)?;
        println!(
            "t={t:>2}: f={} poly={} rem={} | integer total={} | ∇f={} via p=1",
            frac.direct, frac.poly_part, frac.remainder, int3.total, ext.total
        );
        assert!(frac.defect().is_zero() && int3.defect().is_zero() && ext.defect().is_zero());
    }

    let rb = remainder_bound::<Rational>(&f, 1, &mu, 0, 12)?;
    println!("|remainder| = {} <= {} · {} = {}", rb.lhs, rb.coefficient, rb.max_caputo, rb.rhs);
    Ok(())
}
