//! Shared fixtures and an independent dense oracle for the integration tests.
#![allow(dead_code)]

use biregular::matrix::RationalMatrix;
use biregular::network::{
    laplacian, make_complete, make_complete_bipartite, make_cycle, make_petersen, make_subdivision,
    Network,
};
use biregular::rational::{self, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Gauss-Jordan inverse with partial search for a nonzero pivot.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.order();
    let mut a: Vec<Vec<Rational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    RationalMatrix::from_rows(inv)
}

/// `L# = (L + J/n)^{-1} - J/n`, valid for connected networks.
pub fn oracle_group_inverse(net: &Network) -> RationalMatrix {
    let n = net.order();
    let j = Rational::one() / rational::from_u64(n as u64);
    let mut m = laplacian(net);
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c) + &j;
            m.set(r, c, v);
        }
    }
    let mut g = invert(&m).expect("L + J/n is invertible for connected networks");
    for r in 0..n {
        for c in 0..n {
            let v = g.get(r, c) - &j;
            g.set(r, c, v);
        }
    }
    g
}

/// Named distance-biregular fixtures.
pub fn dbrg_fixtures() -> Vec<(String, Network)> {
    let mut out = Vec::new();
    for a in 1..=5 {
        for b in a..=5 {
            out.push((format!("K_{{{a},{b}}}"), make_complete_bipartite(a, b).unwrap()));
        }
    }
    for r in 2..=5 {
        out.push((format!("S(K_{})", r + 1), make_subdivision(&make_complete(r + 1).unwrap())));
    }
    out.push(("S(Petersen)".into(), make_subdivision(&make_petersen())));
    for m in 2..=6 {
        out.push((format!("C_{}", 2 * m), make_cycle(2 * m).unwrap()));
    }
    out
}

/// Connected networks with random rational conductances, `2 ≤ n ≤ 12`.
pub fn random_networks(count: usize, seed: u64) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_network(&mut rng, 12)).collect()
}

pub fn random_network(rng: &mut impl Rng, max_n: usize) -> Network {
    let n = rng.gen_range(2..=max_n);
    let mut edges = Vec::new();
    let cond = |rng: &mut dyn rand::RngCore| rational::ratio(rng.gen_range(1..=9), rng.gen_range(1..=5));
    // random spanning tree, then extra chords
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, cond(rng)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.25) && !edges.iter().any(|(a, b, _)| (*a, *b) == (u, v) || (*a, *b) == (v, u)) {
                edges.push((u, v, cond(rng)));
            }
        }
    }
    Network::from_edges(edges.into_iter().map(|(u, v, c)| (format!("v{u}"), format!("v{v}"), c))).unwrap()
}

/// Point-line incidence graph of the affine plane of order `q ∈ {2, 3, 4, 5}`.
///
/// Points are `(x, y)` over GF(q); lines are `y = mx + b` and `x = c`.
pub fn make_affine_plane(q: usize) -> Network {
    // GF(4) as polynomials over GF(2) modulo t² + t + 1
    const GF4_MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    let add = |a: usize, b: usize| if q == 4 { a ^ b } else { (a + b) % q };
    let mul = |a: usize, b: usize| if q == 4 { GF4_MUL[a][b] } else { (a * b) % q };
    assert!(matches!(q, 2 | 3 | 4 | 5), "unsupported order {q}");
    let mut edges = Vec::new();
    for x in 0..q {
        for y in 0..q {
            let p = format!("p{x}{y}");
            for m in 0..q {
                // y = m x + b  ⇒  b = y - m x
                let b = (0..q).find(|&b| add(mul(m, x), b) == y).unwrap();
                edges.push((p.clone(), format!("l{m}{b}"), Rational::one()));
            }
            edges.push((p.clone(), format!("lx{x}"), Rational::one()));
        }
    }
    Network::from_edges(edges).unwrap()
}
