use nablafrac::frac::{caputo_series, delta_frac_sum, frac_sum, frac_sum_series, FractionalOrder, KernelRow};
use nablafrac::grid::{delta, nabla, rising_factorial, GridFunction};
use nablafrac::harness::io::{grid_to_csv, parse_grid_csv};
use nablafrac::harness::{
    gen_function, render, run_inequality_suite, FunctionSpec, InequalityConfig, InequalitySuite, ReportFormat,
    SuiteConfig,
};
use nablafrac::ineq::{opial_report, ostrowski_report, GVariant, OpialParams};
use nablafrac::scalar::{int, ln_gamma, normalized_rising, rat, Backend, Rational, Real, Scalar, TolerancePolicy};
use nablafrac::taylor::{kernel_sum_closed_form, taylor_extended, taylor_fractional};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = FractionalOrder> {
    (1i64..=36, 1i64..=12).prop_map(|(n, d)| FractionalOrder::from_ratio(n, d).unwrap())
}

fn non_integer_order(lo: i64, hi: i64) -> impl Strategy<Value = FractionalOrder> {
    (2i64..=8)
        .prop_flat_map(move |d| (lo * d + 1..hi * d, Just(d)))
        .prop_filter("non-integer", |(n, d)| n % d != 0)
        .prop_map(|(n, d)| FractionalOrder::from_ratio(n, d).unwrap())
}

fn int_grid(lo: i64, max_len: usize) -> impl Strategy<Value = GridFunction<Rational>> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
        .prop_map(move |v| GridFunction::new(lo, v.into_iter().map(int).collect()).unwrap())
}

fn float_close(x: f64, y: f64) -> bool {
    TolerancePolicy::default().close(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_weight_matches_lgamma(n in 1i64..=200, (num, den) in (1i64..=60, 1i64..=12)) {
        let nu = rat(num, den);
        let exact: Rational = normalized_rising(n, &nu, &nu).unwrap();
        let nf = num as f64 / den as f64;
        let lg = (ln_gamma(n as f64 + nf - 1.0) - ln_gamma(n as f64) - ln_gamma(nf)).exp();
        prop_assert!((Real::to_f64(&exact) - lg).abs() <= 1e-9 * lg.abs() + 1e-12);
    }

    #[test]
    fn kernel_row_recurrence_is_exact(nu in order(), len in 2usize..60) {
        let row = KernelRow::<Rational>::new(&nu, len);
        prop_assert_eq!(row.weight(1), &int(1));
        for n in 1..len as i64 {
            let next = row.weight(n).clone() * (nu.value() + int(n - 1)) / int(n);
            prop_assert_eq!(row.weight(n + 1), &next);
        }
    }

    #[test]
    fn order_one_kernel_is_cumulative_sum(f in int_grid(-3, 30)) {
        let one = FractionalOrder::new(int(1)).unwrap();
        let mut running = int(0);
        for (t, v) in f.iter() {
            running += v;
            prop_assert_eq!(frac_sum(&f, f.lo(), &one, t).unwrap(), running.clone());
        }
    }

    #[test]
    fn nabla_is_linear(f in int_grid(0, 20), g in int_grid(0, 20), k in 0u32..4, c in -5i64..=5) {
        let hi = f.hi().min(g.hi());
        prop_assume!(hi >= k as i64);
        let h = GridFunction::from_fn(0, hi, |t| f.get(t).unwrap().clone() * int(c) + g.get(t).unwrap().clone()).unwrap();
        for t in k as i64..=hi {
            let lhs = nabla(&h, t, k).unwrap();
            let rhs = nabla(&f, t, k).unwrap() * int(c) + nabla(&g, t, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn nabla_of_constant_vanishes(c in -50i64..50, k in 1u32..6, len in 8i64..20) {
        let f = GridFunction::constant(0, len, int(c)).unwrap();
        for t in k as i64..=len {
            prop_assert!(nabla(&f, t, k).unwrap().is_zero());
        }
    }

    #[test]
    fn duality_of_integer_differences(f in int_grid(0, 40), m in 0u32..=6) {
        for t in m as i64..=f.hi() {
            prop_assert_eq!(delta(&f, t - m as i64, m).unwrap(), nabla(&f, t, m).unwrap());
        }
    }

    #[test]
    fn power_rule_float((num, den) in (5i64..=40, 1i64..=4).prop_filter("alpha > 1", |(n, d)| n > d), t in 1i64..=50) {
        let alpha = rat(num, den);
        let g = |s: i64| rising_factorial(s, &alpha).unwrap().to_f64();
        let lhs = g(t) - g(t - 1);
        let rhs = (num as f64 / den as f64) * rising_factorial(t, &(alpha.clone() - int(1))).unwrap().to_f64();
        prop_assert!(float_close(lhs, rhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn law_of_exponents(f in int_grid(0, 16), mu in non_integer_order(0, 3), nu in non_integer_order(0, 3)) {
        let a = f.lo();
        let inner_mu = frac_sum_series(&f, a, &mu, f.hi()).unwrap();
        let inner_nu = frac_sum_series(&f, a, &nu, f.hi()).unwrap();
        let both = frac_sum_series(&f, a, &mu.plus(&nu), f.hi()).unwrap();
        prop_assert_eq!(&frac_sum_series(&inner_mu, a, &nu, f.hi()).unwrap(), &both);
        prop_assert_eq!(&frac_sum_series(&inner_nu, a, &mu, f.hi()).unwrap(), &both);
    }

    #[test]
    fn delta_duality(f in int_grid(0, 12), nu in non_integer_order(0, 3)) {
        for j in 0..=f.hi() {
            prop_assert_eq!(
                delta_frac_sum::<Rational>(&f, 0, &nu, j).unwrap(),
                frac_sum(&f, 0, &nu, j).unwrap()
            );
        }
    }

    #[test]
    fn caputo_of_low_degree_polynomial_vanishes(mu in non_integer_order(1, 5), coeffs in prop::collection::vec(-6i64..=6, 1..=5)) {
        let m = mu.ceil() as usize;
        let coeffs = &coeffs[..coeffs.len().min(m)];
        let f = GridFunction::from_fn(-6, 20, |t| {
            int(coeffs.iter().rev().fold(0i64, |acc, c| acc * t + c))
        }).unwrap();
        let c = caputo_series(&f, 1, &mu, 20).unwrap();
        prop_assert!(c.values().iter().all(Real::is_zero));
    }

    #[test]
    fn extended_taylor_reduces_at_p_zero(seed in any::<u64>(), mu in non_integer_order(0, 5), a in 0i64..4, extra in 1i64..20) {
        let m = mu.ceil();
        let f = gen_function(&FunctionSpec { a, m, b: a + m as i64 + extra, zero_initials_from: m, value_range: 9, seed }).unwrap();
        for t in a + m as i64..=f.hi() {
            prop_assert_eq!(taylor_extended(&f, a, &mu, 0, t).unwrap(), taylor_fractional(&f, a, &mu, t).unwrap());
        }
    }

    #[test]
    fn kernel_closed_form_is_direct_sum(num_den in prop::sample::select(vec![(1, 2), (5, 4), (5, 2), (7, 3)]), n in 1i64..=50) {
        let mu = FractionalOrder::from_ratio(num_den.0, num_den.1).unwrap();
        let row = KernelRow::<Rational>::new(&mu, n as usize);
        let direct = row.weights().iter().fold(int(0), |acc, w| acc + w.clone());
        prop_assert_eq!(kernel_sum_closed_form::<Rational>(2, &mu, 2 + n).unwrap(), direct);
    }

    #[test]
    fn tight_g_never_exceeds_paper(steps in prop::collection::vec(0i64..=20, 4..20), start in 0i64..10, a in 0i64..3) {
        let mut acc = start;
        let g = GridFunction::new(a + 1, steps.iter().map(|s| { acc += s; int(acc) }).collect()).unwrap();
        let m = 3u32;
        for t in a + m as i64..=g.hi() {
            let paper = GVariant::Paper.evaluate(&g, a, m, t).unwrap();
            let tight = GVariant::Tight.evaluate(&g, a, m, t).unwrap();
            prop_assert!(tight <= paper);
        }
    }

    #[test]
    fn opial_g_is_nondecreasing_and_slack_consistent(seed in any::<u64>(), mu in non_integer_order(2, 3), a in 0i64..3, extra in 1i64..14) {
        let t = a + 3 + extra;
        let f = gen_function(&FunctionSpec { a, m: 3, b: t + 1, zero_initials_from: 0, value_range: 9, seed }).unwrap();
        let params = OpialParams::unit(mu, 0, a, t).unwrap();
        let r = opial_report(&f, a, t, &params, GVariant::Paper).unwrap();
        let g = r.array_of("g").unwrap();
        for w in g.windows(2) {
            prop_assert!(w[0].to_f64() <= w[1].to_f64());
        }
        let recomputed = r.rhs.checked_sub(&r.lhs).unwrap();
        prop_assert!(nablafrac::scalar::scalar_close(&recomputed, &r.slack, &TolerancePolicy::default()));
        prop_assert!(r.holds_under(&TolerancePolicy::default()));
    }

    #[test]
    fn ostrowski_coefficient_matches_lgamma(mu in non_integer_order(0, 5), extra in 1i64..30) {
        let m = mu.ceil() as i64;
        let b = m + extra;
        let f = GridFunction::constant(1 - m, b, int(0)).unwrap();
        let coeff = ostrowski_report(&f, 0, b, &mu, 0).unwrap().number_of("coefficient").unwrap().to_f64();
        // Σ_{j=m+1}^{b} Γ(j+μ)/(Γ(j)Γ(μ+1)) / (b-m)
        let mf = Real::to_f64(mu.value());
        let sum: f64 = (m + 1..=b)
            .map(|j| (ln_gamma(j as f64 + mf) - ln_gamma(j as f64) - ln_gamma(mf + 1.0)).exp())
            .sum();
        prop_assert!(float_close(coeff, sum / (b - m) as f64), "{coeff} vs {}", sum / (b - m) as f64);
    }

    #[test]
    fn csv_round_trip(f in int_grid(-20, 40), den in 1i64..9) {
        let g = f.map(|v| v.clone() / int(den));
        prop_assert_eq!(parse_grid_csv(&grid_to_csv(&g)).unwrap(), g);
    }

    #[test]
    fn generated_functions_have_zero_initials(seed in any::<u64>(), m in 1u32..=5, k0 in 0u32..=5, a in -3i64..4) {
        let k0 = k0.min(m);
        let f = gen_function(&FunctionSpec { a, m, b: a + m as i64 + 4, zero_initials_from: k0, value_range: 9, seed }).unwrap();
        prop_assert_eq!(f.lo(), a - m as i64 + 1);
        for k in k0..m {
            prop_assert!(nabla(&f, a, k).unwrap().is_zero());
        }
    }

    #[test]
    fn scalar_tags_never_mix(x in -1000i64..1000, y in 1i64..50) {
        let e = Scalar::Exact(rat(x, y));
        let json = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), e.clone());
        prop_assert!(e.is_exact());
        prop_assert!(!Scalar::Float(x as f64).is_exact());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn suite_results_are_deterministic(seed in any::<u64>(), float in any::<bool>()) {
        let backend = if float { Backend::Float } else { Backend::Exact };
        let cfg = SuiteConfig::new(25, seed, backend);
        let icfg = InequalityConfig { g_variant: GVariant::Tight, ..Default::default() };
        let a = run_inequality_suite(InequalitySuite::Opial, &cfg, &icfg).unwrap();
        let b = run_inequality_suite(InequalitySuite::Opial, &cfg, &icfg).unwrap();
        prop_assert_eq!(a.failures as usize, a.failing_seeds.len());
        prop_assert_eq!(render(&a, ReportFormat::Json).unwrap(), render(&b, ReportFormat::Json).unwrap());
    }
}
