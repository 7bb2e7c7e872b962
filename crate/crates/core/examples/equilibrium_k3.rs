//! Equilibrium measures and the M-property on a weighted triangle.
//!
//! `K3` has the M-property exactly when `3·max c ≤ 2·Σ c`; this walks the
//! conductance `c(x3, x1)` upward until it breaks.

use biregular::network::make_triangle;
use biregular::potential::{all_equilibria, m_property_general};
use biregular::rational::{format, int};

fn main() {
    for c3 in 1..=6 {
        let net = make_triangle(int(1), int(1), int(c3)).unwrap();
        println!("c = (1, 1, {c3})");
        for m in all_equilibria(&net).unwrap() {
            let values: Vec<String> = m.values.iter().map(format).collect();
            println!("  ν^{} = [{}], cap = {}", m.base_id, values.join(", "), format(&m.capacity));
        }
        let report = m_property_general(&net);
        println!("  M-property: {} (3·max ≤ 2·sum: {})", report.verdict, 3 * c3 <= 2 * (2 + c3));
    }
}
