//! Green function of subdivided complete graphs.
//!
//! `S(K_{r+1})` is distance-biregular with `D0 = 3`, `D1 = 4`; its side-0
//! entries of `L#` come straight from the array.

use biregular::dbrg::{derive_counts, detect_dbrg, group_inverse_row, m_property_array, Side};
use biregular::network::{make_complete, make_subdivision};
use biregular::rational::format;

fn main() {
    for r in 2..=6 {
        let net = make_subdivision(&make_complete(r + 1).unwrap());
        let a = detect_dbrg(&net).unwrap();
        let n = derive_counts(&a).unwrap().n;
        for side in Side::BOTH {
            let row: Vec<String> = group_inverse_row(&a, side).unwrap().iter().map(format).collect();
            println!("S(K_{}) n = {n:<3} side {side}: [{}]", r + 1, row.join(", "));
        }
        let rep = m_property_array(&a).unwrap();
        println!("  M-property: {}", serde_json::to_string(&rep).unwrap());
    }
}
