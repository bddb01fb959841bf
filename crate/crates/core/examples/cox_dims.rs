//! Quadric spaces of the Cox presentation at the representative degrees
//! `N_s`, computed in the `A` presentation and in the affine chart.
//!
//! Run with `cargo run --release --example cox_dims [n]`.

use coxspin::config::sample_generic;
use coxspin::verify::{cox_quadric_space, quadratic_degrees, representative_degree, CoxPresentation};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let s = sample_generic(n, 5, 1000).unwrap();
    let degrees = quadratic_degrees(n);
    for k in 0..=n / 2 {
        let d = representative_degree(n, k);
        let mons = degrees.iter().find(|q| q.degree == d).map_or(0, |q| q.monomials.len());
        let (a, basis) = cox_quadric_space(CoxPresentation::Grassmannian, &s.config, &s.y_affine, &d).unwrap();
        let (m, _) = cox_quadric_space(CoxPresentation::Chart, &s.config, &s.y_affine, &d).unwrap();
        println!(
            "N_{k} = {d}: {mons} monomials, relations {a} (A) / {m} (chart), quotient {}",
            mons - a
        );
        if let Some(q) = basis.first() {
            println!("    e.g. {}", q.display());
        }
    }
}
