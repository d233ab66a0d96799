//! Fractional sums of a grid function, their law of exponents, and the
//! delta-calculus counterpart.

use nablafrac::frac::{delta_frac_sum, frac_sum, frac_sum_series, FractionalOrder, KernelRow};
use nablafrac::grid::GridFunction;
use nablafrac::scalar::{int, Rational};

fn main() -> nablafrac::error::Result<()> {
    let half: FractionalOrder = "1/2".parse()?;
    let ones = GridFunction::constant(0, 6, int(1))?;

    let row = KernelRow::<Rational>::new(&half, 4);
    let weights: Vec<String> = row.weights().iter().map(|w| w.to_string()).collect();
    println!("w_1/2(1..4) = {}", weights.join(", "));
    println!("sum of order 1/2 of f=1 at t=2: {}", frac_sum(&ones, 0, &half, 2)?);

    // Two half-sums compose to a plain cumulative sum.
    let once = frac_sum_series(&ones, 0, &half, 6)?;
    let twice = frac_sum_series(&once, 0, &half, 6)?;
    for (t, v) in twice.iter() {
        println!("t={t}: half∘half = {v}, order 1 = {}", frac_sum(&ones, 0, &half.plus(&half), t)?);
    }

    let f = GridFunction::from_fn(0, 6, |t| int(t * t - 2))?;
    let nu: FractionalOrder = "7/4".parse()?;
    for j in 0..=3 {
        let nabla: Rational = frac_sum(&f, 0, &nu, j)?;
        let delta: Rational = delta_frac_sum(&f, 0, &nu, j)?;
        println!("j={j}: nabla {nabla} delta {delta}");
    }
    Ok(())
}
