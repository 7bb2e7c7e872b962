//! Feasibility conditions on double intersection arrays.
//!
//! Runs `validate` on a few realizable arrays and a few broken ones and prints
//! which conditions fail.

use biregular::dbrg::{derive_counts, validate, BiregularArray};

fn main() {
    let cases: [(&str, u64, u64, Vec<u64>, Vec<u64>); 6] = [
        ("S(K4)", 3, 2, vec![1, 1, 2], vec![1, 1, 2, 2]),
        ("K_{2,3}", 3, 2, vec![1, 3], vec![1, 2]),
        ("Heawood", 3, 3, vec![1, 1, 3], vec![1, 1, 3]),
        ("altered S(K4)", 3, 2, vec![1, 1, 2], vec![1, 1, 1, 2]),
        ("fractional", 5, 5, vec![1, 3, 5], vec![1, 3, 5]),
        ("unbalanced", 3, 2, vec![1, 2, 2], vec![1, 1, 2, 2]),
    ];
    for (name, k0, k1, c0, c1) in cases {
        let a = BiregularArray::new(k0, k1, c0, c1).unwrap();
        let report = validate(&a);
        print!("{name:<14} {a:<26} ");
        if report.passed {
            println!("feasible, n = {}", derive_counts(&a).unwrap().n);
        } else {
            println!("infeasible");
            for f in &report.failures {
                println!("    {:<12} {}", f.condition.id(), f.detail);
            }
        }
    }
}
