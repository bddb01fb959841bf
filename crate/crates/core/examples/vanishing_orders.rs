//! Vanishing orders of the chart Pfaffians `Pf(M_B)` at the special points
//! `Q_1, ..., Q_n`.
//!
//! Run with `cargo run --release --example vanishing_orders`.

use coxspin::config::sample_generic;
use coxspin::verify::vanishing_all;

fn main() {
    let s = sample_generic(6, 3, 1000).unwrap();
    println!(
        "q = {:?}",
        s.config.q.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    let reports = vanishing_all(&s.config, &s.y_affine, 5, 3).unwrap();
    println!("{:>8} {:>6} {:>8} {:>20}", "B", "deg", "ord@Qn", "mult at Q1..Q5");
    for r in &reports {
        println!(
            "{:>8} {:>6} {:>8} {:>20}  {}",
            r.subset.label(),
            r.degree,
            r.order_at_qn,
            format!("{:?}", r.multiplicities),
            if r.ok { "ok" } else { "FAILED" }
        );
    }
}
