//! Seeded generation of admissible grid functions and random orders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frac::FractionalOrder;
use crate::grid::GridFunction;
use crate::scalar::{int, rat, Rational};
use crate::taylor::{construct_from_taylor_data, TaylorSeed};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` (0-based): `splitmix64(master + (index+1)·0x9E3779B97F4A7C15)`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add((index + 1).wrapping_mul(GOLDEN)))
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform non-integer order `num/den` in `(lo, hi)` with `2 <= den <= 8`.
pub fn random_order(rng: &mut impl Rng, lo: u32, hi: u32) -> FractionalOrder {
    assert!(lo < hi, "empty order range ({lo}, {hi})");
    loop {
        let den: i64 = rng.random_range(2..=8);
        let num: i64 = rng.random_range(lo as i64 * den + 1..hi as i64 * den);
        if num % den != 0 {
            return FractionalOrder::non_integer(rat(num, den)).expect("positive non-integer");
        }
    }
}

/// Uniform integer in `[-range, range]` as a rational.
pub fn random_int(rng: &mut impl Rng, range: u32) -> Rational {
    let r = range as i64;
    int(rng.random_range(-r..=r))
}

/// Weight `k/8` with `k` uniform in `lo..=hi`.
pub fn random_eighths(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.random_range(lo..=hi), 8)
}

/// Recipe for a random integer-valued function on `[a-m+1, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionSpec {
    pub a: i64,
    pub m: u32,
    pub b: i64,
    /// `∇^k f(a) = 0` for every `k >= zero_initials_from`.
    pub zero_initials_from: u32,
    /// Free data is drawn from `[-value_range, value_range]`.
    pub value_range: u32,
    pub seed: u64,
}

impl FunctionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Param("function spec needs m >= 1".into()));
        }
        if self.a + self.m as i64 >= self.b {
            return Err(Error::Param(format!(
                "function spec needs a+m < b (a={}, m={}, b={})",
                self.a, self.m, self.b
            )));
        }
        if self.zero_initials_from > self.m {
            return Err(Error::Param(format!(
                "zero_initials_from={} exceeds m={}",
                self.zero_initials_from, self.m
            )));
        }
        Ok(())
    }
}

/// Draws `∇^k f(a)` for `k < zero_initials_from` and `∇^m f` on `[a+1, b]`,
/// then builds `f` from that Taylor data.
pub fn gen_function(spec: &FunctionSpec) -> Result<GridFunction<Rational>> {
    spec.validate()?;
    let mut rng = rng_from(spec.seed);
    let initial = (0..spec.m)
        .map(|k| {
            if k < spec.zero_initials_from {
                random_int(&mut rng, spec.value_range)
            } else {
                int(0)
            }
        })
        .collect();
    let h = GridFunction::from_fn(spec.a + 1, spec.b, |_| random_int(&mut rng, spec.value_range))?;
    construct_from_taylor_data(&TaylorSeed::new(spec.a, spec.m, initial, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::nabla;

    fn spec(k0: u32, range: u32, seed: u64) -> FunctionSpec {
        FunctionSpec {
            a: 2,
            m: 3,
            b: 12,
            zero_initials_from: k0,
            value_range: range,
            seed,
        }
    }

    #[test]
    fn zero_initials_give_zero_tail() {
        let f = gen_function(&spec(0, 9, 5)).unwrap();
        assert_eq!(f.lo(), 0);
        for t in 0..=2 {
            assert_eq!(f.get(t).unwrap(), &int(0));
        }
    }

    #[test]
    fn partial_initials() {
        let f = gen_function(&spec(1, 9, 11)).unwrap();
        assert_eq!(nabla(&f, 2, 1).unwrap(), int(0));
        assert_eq!(nabla(&f, 2, 2).unwrap(), int(0));
    }

    #[test]
    fn deterministic_and_zero_range() {
        assert_eq!(gen_function(&spec(2, 9, 3)).unwrap(), gen_function(&spec(2, 9, 3)).unwrap());
        assert_ne!(gen_function(&spec(2, 9, 3)).unwrap(), gen_function(&spec(2, 9, 4)).unwrap());
        let zero = gen_function(&spec(0, 0, 3)).unwrap();
        assert!(zero.values().iter().all(|v| *v == int(0)));
    }

    #[test]
    fn invalid_specs() {
        let mut s = spec(0, 1, 0);
        s.b = 5;
        assert!(gen_function(&s).is_err());
        let mut s = spec(0, 1, 0);
        s.zero_initials_from = 4;
        assert!(gen_function(&s).is_err());
    }

    #[test]
    fn seeds_and_orders() {
        assert_eq!(splitmix64(0), 0);
        assert_ne!(trial_seed(42, 0), trial_seed(42, 1));
        assert_eq!(trial_seed(42, 7), trial_seed(42, 7));
        let mut rng = rng_from(1);
        for _ in 0..200 {
            let mu = random_order(&mut rng, 2, 3);
            assert!(!mu.is_integer());
            assert!(*mu.value() > int(2) && *mu.value() < int(3));
            assert!(*mu.value().denom() <= 8.into());
        }
    }
}
