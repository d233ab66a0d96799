//! Opial-type inequality with weights, both G variants, and the μ = 5/2 case.

use nablafrac::grid::GridFunction;
use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::ineq::{opial_corollary_25, opial_report, Conjugate, GVariant, OpialParams};
use nablafrac::scalar::{int, rat, TolerancePolicy};

fn main() -> nablafrac::error::Result<()> {
    let (a, t) = (0, 10);
    let f = gen_function(&FunctionSpec {
        a,
        m: 3,
        b: t + 1,
        zero_initials_from: 0,
        value_range: 5,
        seed: 17,
    })?;
    let c = GridFunction::from_fn(a + 1, t, |s| rat(8 + s, 8))?;
    let d = GridFunction::constant(a + 3, t, int(1))?;
    let params = OpialParams::new("9/4".parse()?, 1, Conjugate::quadratic(), c, d)?;

    for variant in [GVariant::Paper, GVariant::Tight] {
        let r = opial_report(&f, a, t, &params, variant)?;
        println!("{variant}: lhs {} rhs {} slack {} holds {}", r.lhs, r.rhs, r.slack, r.holds);
        if let Some(e) = &r.exact {
            println!("  squared: {} <= {} is {}", e.lhs, e.rhs, e.holds);
        }
    }

    // The tight variant fails on this input, the default one holds.
    let counter = GridFunction::new(-2, [0, 0, 0, -2, -8, -19, -35].map(int).to_vec())?;
    for variant in [GVariant::Paper, GVariant::Tight] {
        let r = opial_corollary_25(&counter, 4, variant)?;
        println!(
            "μ=5/2 {variant}: prefactor {} slack {} holds {}",
            r.number_of("prefactor").unwrap(),
            r.slack,
            r.holds_under(&TolerancePolicy::default())
        );
    }
    Ok(())
}
