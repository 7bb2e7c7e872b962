//! Every complete bipartite graph has the M-property.
//!
//! Compares the closed-form group inverse of `K_{a,b}` with the dense solve
//! and prints the per-distance entries.

use biregular::dbrg::{detect_dbrg_structure, group_inverse_row, m_property_array, Side};
use biregular::network::make_complete_bipartite;
use biregular::potential::{group_inverse, m_property_general};
use biregular::rational::format;

fn main() {
    for a in 1..=4 {
        for b in a..=4 {
            let net = make_complete_bipartite(a, b).unwrap();
            let s = detect_dbrg_structure(&net).unwrap();
            let dense = group_inverse(&net);
            let mut same = true;
            let rows = [group_inverse_row(&s.array, Side::Zero).unwrap(), group_inverse_row(&s.array, Side::One).unwrap()];
            for x in 0..net.order() {
                for y in 0..net.order() {
                    same &= &rows[s.side(y).index()][s.distances.get(x, y)] == dense.get(x, y);
                }
            }
            let side0: Vec<String> = rows[0].iter().map(format).collect();
            println!(
                "K_{{{a},{b}}} {}  L#_0 = [{}]  closed = dense: {same}  M: graph {} array {}",
                s.array,
                side0.join(", "),
                m_property_general(&net).verdict,
                m_property_array(&s.array).unwrap().verdict
            );
        }
    }
}
