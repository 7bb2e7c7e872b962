//! The equilibrium arrays and sphere sizes determine the intersection array.

use biregular::classify::{search_arrays, SearchBounds};
use biregular::dbrg::{derive_counts, equilibrium_arrays, recover_array};
use biregular::rational::format;

fn main() {
    let found = search_arrays(SearchBounds { max_k: 4, max_d: 6, max_n: 30 }).unwrap();
    for r in &found {
        let e = equilibrium_arrays(&r.array).unwrap();
        let counts = derive_counts(&r.array).unwrap();
        let back = recover_array(&e, [&counts.k0, &counts.k1]).unwrap();
        let q0: Vec<String> = e.q0.iter().map(format).collect();
        println!("{:<28} q0 = [{}]  recovered: {}", r.array.to_string(), q0.join(", "), back == r.array);
    }
}
