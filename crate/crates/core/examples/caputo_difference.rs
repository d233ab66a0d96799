//! Caputo-like nabla differences on both backends.

use nablafrac::frac::{caputo_nabla, caputo_series, FractionalOrder};
use nablafrac::grid::GridFunction;
use nablafrac::scalar::{int, Rational};

fn main() -> nablafrac::error::Result<()> {
    let cube = GridFunction::from_fn(-2, 8, |t| int(t * t * t))?;
    let mu: FractionalOrder = "5/2".parse()?;

    let exact: Rational = caputo_nabla(&cube, 1, &mu, 3)?;
    println!("order 5/2 difference of t^3 at t=3, base 1: {exact}");

    let exact = caputo_series(&cube, 1, &mu, 8)?;
    let float = caputo_series(&cube.to_backend::<f64>(), 1, &mu, 8)?;
    for ((t, e), (_, x)) in exact.iter().zip(float.iter()) {
        println!("t={t}: {e} ≈ {x}");
    }

    // A polynomial of degree below ⌈μ⌉ is annihilated.
    let quad = GridFunction::from_fn(-3, 8, |t| int(4 * t * t - t + 9))?;
    let zero = caputo_series(&quad, 1, &"7/3".parse()?, 8)?;
    println!("quadratic, order 7/3: {:?}", zero.values().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    Ok(())
}
