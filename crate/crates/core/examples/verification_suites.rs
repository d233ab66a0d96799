//! Runs every randomized suite briefly and prints a summary table.
//!
//! `cargo run --release --example verification_suites -- 500` raises the trial count.

use nablafrac::harness::{
    run_identity_suite, run_inequality_suite, IdentitySuite, InequalityConfig, InequalitySuite, SuiteConfig,
};
use nablafrac::scalar::Backend;

fn main() -> nablafrac::error::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let cfg = SuiteConfig::new(trials, 1, Backend::Exact);
    println!("{:<20} {:>7} {:>9}  worst", "suite", "checks", "failures");
    for s in IdentitySuite::ALL {
        let r = run_identity_suite(*s, &cfg)?;
        println!("{:<20} {:>7} {:>9}  {}", r.suite, r.checks, r.failures, r.worst_slack);
    }
    for s in InequalitySuite::ALL {
        let r = run_inequality_suite(*s, &cfg, &InequalityConfig::default())?;
        println!("{:<20} {:>7} {:>9}  {}", r.suite, r.checks, r.failures, r.worst_slack);
        for m in r.messages.iter().take(2) {
            println!("    {m}");
        }
    }
    Ok(())
}
