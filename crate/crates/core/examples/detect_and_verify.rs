//! Recognize distance-biregular graphs and check the closed form entrywise.

use biregular::dbrg::{detect_dbrg_structure, group_inverse_row, Side};
use biregular::network::{make_complete, make_cycle, make_path, make_petersen, make_subdivision, Network};
use biregular::potential::group_inverse;

fn main() {
    let graphs: Vec<(&str, Network)> = vec![
        ("S(Petersen)", make_subdivision(&make_petersen())),
        ("S(K5)", make_subdivision(&make_complete(5).unwrap())),
        ("C10", make_cycle(10).unwrap()),
        ("Petersen", make_petersen()),
        ("P5", make_path(5).unwrap()),
    ];
    for (name, net) in graphs {
        let Some(s) = detect_dbrg_structure(&net) else {
            println!("{name:<12} not distance-biregular");
            continue;
        };
        let rows = [group_inverse_row(&s.array, Side::Zero).unwrap(), group_inverse_row(&s.array, Side::One).unwrap()];
        let dense = group_inverse(&net);
        let n = net.order();
        let matched = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| &rows[s.side(y).index()][s.distances.get(x, y)] == dense.get(x, y))
            .count();
        println!("{name:<12} {}  {matched}/{} entries match", s.array, n * n);
    }
}
