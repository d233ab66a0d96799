//! Closed forms for kernel sums, rising-power sums and the Γ-quotient identity.

use nablafrac::frac::{FractionalOrder, KernelRow};
use nablafrac::harness::{identity_case, IdentitySuite};
use nablafrac::scalar::{int, Rational};
use nablafrac::taylor::{kernel_sum_closed_form, sum_rising_closed_form};

fn main() -> nablafrac::error::Result<()> {
    for s in ["1/2", "5/4", "5/2", "7/3"] {
        let mu: FractionalOrder = s.parse()?;
        let row = KernelRow::<Rational>::new(&mu, 10);
        let direct = row.weights().iter().fold(int(0), |acc, w| acc + w.clone());
        let closed: Rational = kernel_sum_closed_form(0, &mu, 10)?;
        println!("mu={s}: Σ_(n≤10) w = {direct}, closed form {closed}");
    }

    let closed: Rational = sum_rising_closed_form(0, 3, 5, &"5/2".parse()?)?;
    println!("rising-power sum (a=0, m=3, b=5, 5/2) = {closed}");

    let case = identity_case::<Rational>(IdentitySuite::GammaQuotient, 7)?;
    println!("{}", case.context);
    for (label, lhs, rhs) in &case.pairs {
        println!("  {label}: {lhs} = {rhs}");
    }
    Ok(())
}
