//! Independent reference implementations, used by the test suite and the
//! `selftest` subcommand. Nothing else in the crate depends on them.

pub mod brute;
pub mod lasso;
pub mod random;
pub mod selftest;
pub mod timegrid;

pub use brute::{brute_force_realizability, BruteOptions, BruteVerdict};
pub use lasso::{enumerate_lassos, eval_ltl_on_lasso, Lasso};
pub use selftest::{run_selftest, CheckOutcome, SelftestOptions};
pub use timegrid::{brute_force_time, brute_force_time_full, GridOptimum};
