//! Effective resistance by distance on a distance-biregular graph, against
//! `(ν^x(y) + ν^y(x)) / n` computed from the measures of the whole graph.

use biregular::dbrg::{dbrg_effective_resistance, detect_dbrg_structure, Side};
use biregular::network::{make_petersen, make_subdivision};
use biregular::potential::all_equilibria;
use biregular::rational::{format, from_u64, to_decimal};

fn main() {
    let net = make_subdivision(&make_petersen());
    let s = detect_dbrg_structure(&net).unwrap();
    let ms = all_equilibria(&net).unwrap();
    let n = from_u64(net.order() as u64);
    println!("S(Petersen) {}", s.array);
    for side in Side::BOTH {
        let y = (0..net.order()).find(|&v| s.side(v) == side).unwrap();
        for d in 1..=s.array.diameter(side) {
            let closed = dbrg_effective_resistance(&s.array, side, d).unwrap();
            let x = (0..net.order()).find(|&v| s.distances.get(v, y) == d).unwrap();
            let oracle = (&ms[x].values[y] + &ms[y].values[x]) / &n;
            println!(
                "  side {side} distance {d}: R = {:<8} ≈ {}  oracle agrees: {}",
                format(&closed),
                to_decimal(&closed, 4),
                closed == oracle
            );
        }
    }
}
