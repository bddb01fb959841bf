//! Degree-by-degree comparison of the Cox ideal with the span of the Wick
//! quadrics and one torus translate.
//!
//! Run with `cargo run --release --example main_theorem [n] [seed]`.

use coxspin::verify::{check_main, MainOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let jobs = std::thread::available_parallelism().map_or(1, |k| k.get());
    let report = check_main(
        n,
        seed,
        &MainOptions {
            jobs,
            ..MainOptions::default()
        },
    )
    .unwrap();
    println!("n = {n}, seed = {seed}: {} quadratic degrees", report.degrees.len());
    println!(
        "{:>22} {:>5} {:>5} {:>5} {:>5}",
        "degree", "mons", "cox", "spin", "both"
    );
    for d in report
        .degrees
        .iter()
        .filter(|d| d.representative.is_some() || d.spin_rank != d.cox_kernel_dim)
        .take(20)
    {
        println!(
            "{:>22} {:>5} {:>5} {:>5} {:>5}",
            d.degree.to_string(),
            d.monomial_count,
            d.cox_kernel_dim,
            d.spin_rank,
            d.combined_rank
        );
    }
    println!(
        "verdict {} (representatives {}, inclusions {}), {} ms",
        report.verdict, report.representatives_ok, report.inclusions_ok, report.timings_ms["total"]
    );
}
