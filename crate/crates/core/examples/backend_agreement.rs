//! Exact and float backends side by side on random inputs.

use nablafrac::frac::{caputo_series, frac_sum_series};
use nablafrac::harness::gen::{random_order, rng_from};
use nablafrac::harness::{gen_function, FunctionSpec};
use nablafrac::scalar::Real;

fn main() -> nablafrac::error::Result<()> {
    let mut rng = rng_from(42);
    let mut worst = 0.0f64;
    for seed in 0..20 {
        let mu = random_order(&mut rng, 0, 5);
        let m = mu.ceil();
        let exact = gen_function(&FunctionSpec {
            a: 0,
            m,
            b: 60,
            zero_initials_from: m,
            value_range: 9,
            seed,
        })?;
        let float = exact.to_backend::<f64>();
        let pairs = [
            (frac_sum_series(&exact, 0, &mu, 60)?, frac_sum_series(&float, 0, &mu, 60)?),
            (caputo_series(&exact, 1, &mu, 60)?, caputo_series(&float, 1, &mu, 60)?),
        ];
        for (e, x) in &pairs {
            for (ev, xv) in e.values().iter().zip(x.values()) {
                let ev = Real::to_f64(ev);
                worst = worst.max((ev - xv).abs() / ev.abs().max(1e-2));
            }
        }
        println!("seed {seed}: mu={mu}");
    }
    println!("worst relative difference: {worst:.2e}");
    Ok(())
}
