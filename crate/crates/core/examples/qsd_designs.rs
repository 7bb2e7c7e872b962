//! Quasi-symmetric design parameters with `x = 0`, tested for the M-property
//! both by the parameter inequality and on the incidence-graph array.

use biregular::classify::{build_case5_array, consistent_qsd_params, qsd_m_condition};
use biregular::dbrg::m_property_array;

fn main() {
    let mut feasible = 0;
    let mut passing = 0;
    for p in consistent_qsd_params(20, 20) {
        let Ok(a) = build_case5_array(&p) else { continue };
        feasible += 1;
        let by_params = qsd_m_condition(&p).unwrap();
        let by_array = m_property_array(&a).unwrap().verdict;
        assert_eq!(by_params, by_array);
        passing += by_params as usize;
        println!(
            "r={:<2} k={:<2} λ={:<2} y={:<2} {:<30} M: {by_params}",
            p.r, p.k, p.lambda, p.y, a.to_string()
        );
    }
    println!("{feasible} feasible parameter sets, {passing} with the M-property");
}
