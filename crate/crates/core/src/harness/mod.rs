//! Random admissible inputs, suite runners and file formats.

pub mod gen;
pub mod io;
pub mod suites;

pub use gen::{gen_function, trial_seed, FunctionSpec};
pub use io::{read_grid, render, write_grid, write_report, GridFormat, Record, ReportFormat, Rows};
pub use suites::{
    identity_case, inequality_trial, run_identity_suite, run_inequality_suite, IdentitySuite, InequalityConfig,
    InequalitySuite, SuiteConfig, SuiteResult,
};
