use std::collections::HashMap;

use super::array::{BiregularArray, Side};
use crate::network::{distances, DistanceTable, Network};

/// A concrete graph recognized as distance-biregular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbrgStructure {
    pub array: BiregularArray,
    /// Stable set of each vertex, in network index order.
    pub sides: Vec<Side>,
    pub distances: DistanceTable,
}

impl DbrgStructure {
    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }
}

/// Returns the double intersection array of `net` if it is distance-biregular.
pub fn detect_dbrg(net: &Network) -> Option<BiregularArray> {
    detect_dbrg_structure(net).map(|s| s.array)
}

/// Like [`detect_dbrg`], also returning the side labeling and distances.
///
/// Only unit-conductance networks qualify. Sides are labeled so that
/// `D0 ≤ D1`, then `k0 ≥ k1`, then `V0` holds the lexicographically
/// smallest vertex id.
pub fn detect_dbrg_structure(net: &Network) -> Option<DbrgStructure> {
    if !net.is_unit_weighted() {
        return None;
    }
    let n = net.order();
    let dist = distances(net);
    let color: Vec<usize> = (0..n).map(|v| dist.get(0, v) % 2).collect();
    if net.edges().iter().any(|(u, v, _)| color[*u] == color[*v]) {
        return None;
    }

    let mut valency: [Option<usize>; 2] = [None, None];
    for v in 0..n {
        let slot = &mut valency[color[v]];
        match slot {
            Some(k) if *k != net.valency(v) => return None,
            _ => *slot = Some(net.valency(v)),
        }
    }
    let valency = [valency[0]?, valency[1]?];

    // (color of x, distance) -> (c, b)
    let mut numbers: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut diam = [0usize; 2];
    for x in 0..n {
        diam[color[x]] = diam[color[x]].max(dist.eccentricity(x));
        for y in 0..n {
            let i = dist.get(x, y);
            if i == 0 {
                continue;
            }
            let mut c = 0;
            let mut b = 0;
            for z in net.neighbors(y) {
                let dz = dist.get(x, z);
                if dz + 1 == i {
                    c += 1;
                } else if dz == i + 1 {
                    b += 1;
                }
            }
            match numbers.insert((color[x], i), (c, b)) {
                Some(prev) if prev != (c, b) => return None,
                _ => {}
            }
        }
    }
    // eccentricity must be constant on each class
    for x in 0..n {
        if dist.eccentricity(x) != diam[color[x]] {
            return None;
        }
    }

    let c_seq = |col: usize| -> Vec<u64> {
        (1..=diam[col]).map(|i| numbers[&(col, i)].0 as u64).collect()
    };
    let smallest_id_color = (0..n).min_by(|&a, &b| net.id(a).cmp(net.id(b))).map(|v| color[v])?;
    let zero_color = {
        let key = |col: usize| {
            (
                diam[col],
                std::cmp::Reverse(valency[col]),
                if col == smallest_id_color { 0 } else { 1 },
            )
        };
        if key(0) <= key(1) {
            0
        } else {
            1
        }
    };
    let one_color = 1 - zero_color;
    let array = BiregularArray::new(
        valency[zero_color] as u64,
        valency[one_color] as u64,
        c_seq(zero_color),
        c_seq(one_color),
    )
    .ok()?;
    let sides = color
        .iter()
        .map(|&c| if c == zero_color { Side::Zero } else { Side::One })
        .collect();
    Some(DbrgStructure {
        array,
        sides,
        distances: dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{make_complete, make_complete_bipartite, make_cycle, make_path, make_petersen, make_subdivision, make_triangle};
    use crate::rational::int;

    #[test]
    fn complete_bipartite() {
        let s = detect_dbrg_structure(&make_complete_bipartite(2, 3).unwrap()).unwrap();
        assert_eq!(s.array, BiregularArray::new(3, 2, vec![1, 3], vec![1, 2]).unwrap());
        assert_eq!(s.side(0), Side::Zero);
        assert_eq!(s.side(4), Side::One);
    }

    #[test]
    fn stars_and_digon() {
        let star = detect_dbrg(&make_complete_bipartite(1, 4).unwrap()).unwrap();
        assert_eq!(star, BiregularArray::new(4, 1, vec![1], vec![1, 1]).unwrap());
        // the centre sits on the "b" side here
        let star = detect_dbrg_structure(&make_complete_bipartite(3, 1).unwrap()).unwrap();
        assert_eq!(star.side(3), Side::Zero);
        let digon = detect_dbrg_structure(&make_complete_bipartite(1, 1).unwrap()).unwrap();
        assert_eq!(digon.array, BiregularArray::new(1, 1, vec![1], vec![1]).unwrap());
        assert_eq!(digon.side(0), Side::Zero);
    }

    #[test]
    fn subdivisions() {
        let s = detect_dbrg(&make_subdivision(&make_complete(4).unwrap())).unwrap();
        assert_eq!(s, BiregularArray::new(3, 2, vec![1, 1, 2], vec![1, 1, 2, 2]).unwrap());
        let p = detect_dbrg(&make_subdivision(&make_petersen())).unwrap();
        assert_eq!(p.k(Side::Zero), 3);
        assert_eq!(p.k(Side::One), 2);
    }

    #[test]
    fn even_cycle() {
        let c = detect_dbrg(&make_cycle(8).unwrap()).unwrap();
        assert_eq!(c, BiregularArray::new(2, 2, vec![1, 1, 1, 2], vec![1, 1, 1, 2]).unwrap());
    }

    #[test]
    fn rejections() {
        assert!(detect_dbrg(&make_path(4).unwrap()).is_none());
        assert!(detect_dbrg(&make_cycle(5).unwrap()).is_none());
        assert!(detect_dbrg(&make_triangle(int(1), int(1), int(1)).unwrap()).is_none());
        let weighted = Network::from_edges([("a", "b", int(2))]).unwrap();
        assert!(detect_dbrg(&weighted).is_none());
        // the hexagonal prism is bipartite and 3-regular but not distance-regular
        let mut edges = Vec::new();
        for i in 0..6 {
            edges.push((format!("u{i}"), format!("u{}", (i + 1) % 6), int(1)));
            edges.push((format!("w{i}"), format!("w{}", (i + 1) % 6), int(1)));
            edges.push((format!("u{i}"), format!("w{i}"), int(1)));
        }
        let g = Network::from_edges(edges).unwrap();
        assert!(detect_dbrg(&g).is_none());
    }
}
