//! Bounded sweep over double intersection arrays.
//!
//! Lists every feasible array with `k ≤ 5`, `D ≤ 8`, `n ≤ 60` that has the
//! M-property, and checks the diameter and order bounds on the survivors.

use biregular::classify::{search_arrays, CaseLabel, SearchBounds};
use biregular::dbrg::Side;

fn main() {
    let bounds = SearchBounds { max_k: 5, max_d: 8, max_n: 60 };
    let found = search_arrays(bounds).expect("sweep");
    let survivors: Vec<_> = found.iter().filter(|r| r.report.verdict).collect();
    println!("{} feasible arrays, {} with the M-property", found.len(), survivors.len());
    for r in &survivors {
        println!("  {:<28} n = {:<3} {}", r.array.to_string(), r.n, r.case);
    }
    let bad_diam = survivors
        .iter()
        .filter(|r| r.array.diameter(Side::Zero) > 3 || r.array.diameter(Side::One) > 4)
        .count();
    let bad_order = survivors
        .iter()
        .filter(|r| r.array.diameter(Side::Zero) >= 2)
        .filter(|r| r.n >= 2 * r.array.k(Side::One) + r.array.k(Side::Zero))
        .count();
    let qsd = survivors.iter().filter(|r| r.case == CaseLabel::QsdD3D4).count();
    println!("survivors beyond D0 ≤ 3, D1 ≤ 4: {bad_diam}");
    println!("survivors with n ≥ 2k1 + k0:     {bad_order}");
    println!("QSD_D3D4 survivors:              {qsd}");
}
