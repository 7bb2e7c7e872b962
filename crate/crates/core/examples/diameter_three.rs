//! Bipartite distance-regular graphs of diameter 3, `{k; 1, μ, k}`: the
//! M-property holds iff `4k/5 ≤ μ ≤ k - 1`.

use biregular::classify::{bipartite_drg_d3_m, case4_array};
use biregular::dbrg::{m_property_array, validate};

fn main() {
    for k in 2..=12 {
        let passing: Vec<u64> = (1..k).filter(|&mu| bipartite_drg_d3_m(k, mu).unwrap()).collect();
        let feasible: Vec<u64> = (1..k).filter(|&mu| validate(&case4_array(k, mu).unwrap()).passed).collect();
        for mu in 1..k {
            let a = case4_array(k, mu).unwrap();
            assert_eq!(m_property_array(&a).unwrap().verdict, bipartite_drg_d3_m(k, mu).unwrap());
        }
        println!("k = {k:<2} feasible μ: {feasible:?}  M-property μ: {passing:?}");
    }
}
