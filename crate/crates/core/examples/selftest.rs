//! Cross-checks the production engine against the naive reference
//! implementations on a small random sample.
//!
//!     cargo run --release --example selftest

use speccc::oracles::{run_selftest, SelftestOptions};

fn main() {
    let results = run_selftest(&SelftestOptions { seed: 7, cases: 30 });
    for r in &results {
        println!("{r}");
    }
    if results.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
}
