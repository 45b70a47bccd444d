//! Shrinking long waits: one abstract tick stands for `d` seconds, chosen
//! to minimize the total number of next steps within an error budget.
//!
//!     cargo run --example time_abstraction

use speccc::corpus::Sign;
use speccc::time::{gcd_reduce, optimize};

fn show(label: &str, p: &speccc::time::TimeProfile) {
    println!("{label}: d = {}", p.divisor);
    for i in 0..p.thetas.len() {
        println!("  {:>4} s -> {:>3} ticks (error {:+})", p.thetas[i], p.reduced[i], p.errors[i]);
    }
    println!("  total ticks {}, total error {}", p.reduced_sum(), p.error_sum());
}

fn main() {
    let thetas = [3, 180, 60];
    show("exact (gcd)", &gcd_reduce(&thetas));
    show("budget B=5, deadlines may only move later", &optimize(&thetas, 5, &[Sign::Nonneg; 3]));
    show("budget B=5, deadlines may only move earlier", &optimize(&thetas, 5, &[Sign::Nonpos; 3]));
    show("budget B=0", &optimize(&thetas, 0, &[Sign::Nonneg; 3]));
}
