//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::time::Instant;

use biregular::classify::{
    bipartite_drg_d3_m, build_case5_array, case4_array, consistent_qsd_params, qsd_m_condition,
    search_arrays, CaseLabel, QsdParams, SearchBounds, SearchRecord,
};
use biregular::dbrg::{
    dbrg_effective_resistance, derive_counts, detect_dbrg_structure, equilibrium_arrays,
    group_inverse_row, m_property_array, recover_array, DbrgError, Side,
};
use biregular::network::{laplacian, make_complete, make_subdivision, make_triangle, Network};
use biregular::potential::{
    all_equilibria, check_group_inverse, effective_resistance, group_inverse,
    group_inverse_with_measures, m_property_general,
};
use biregular::rational::{self, int, ratio, Rational};
use num_traits::Zero;

use common::{dbrg_fixtures, make_affine_plane, oracle_group_inverse, random_networks};

type Outcome = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn sweep() -> Vec<SearchRecord> {
    search_arrays(SearchBounds { max_k: 5, max_d: 8, max_n: 60 }).expect("sweep runs")
}

fn criterion_1() -> Outcome {
    let mut entries = 0usize;
    let fixtures = dbrg_fixtures();
    for (name, net) in &fixtures {
        let s = detect_dbrg_structure(net).ok_or(format!("{name}: not detected"))?;
        let rows = [
            group_inverse_row(&s.array, Side::Zero).map_err(|e| format!("{name}: {e}"))?,
            group_inverse_row(&s.array, Side::One).map_err(|e| format!("{name}: {e}"))?,
        ];
        let exact = group_inverse(net);
        let independent = oracle_group_inverse(net);
        for x in 0..net.order() {
            for y in 0..net.order() {
                let closed = &rows[s.side(y).index()][s.distances.get(x, y)];
                if closed != exact.get(x, y) || closed != independent.get(x, y) {
                    return fail(format!(
                        "{name}: L#({}, {}) closed {} vs oracle {}",
                        net.id(x),
                        net.id(y),
                        rational::format(closed),
                        rational::format(exact.get(x, y))
                    ));
                }
                entries += 1;
            }
        }
    }
    Ok(format!("{} graphs, {entries} entries equal", fixtures.len()))
}

fn k3_display(c: [i64; 3]) -> [[Rational; 3]; 3] {
    // ν^{x_i}(x_j) from the closed display, c1 = c(x1,x2), c2 = c(x2,x3), c3 = c(x3,x1)
    let [c1, c2, c3] = c;
    let s = c1 * c2 + c2 * c3 + c3 * c1;
    let q = |num: i64| ratio(num, s);
    [
        [int(0), q(2 * c2 + c3), q(2 * c2 + c1)],
        [q(2 * c3 + c2), int(0), q(2 * c3 + c1)],
        [q(2 * c1 + c2), q(2 * c1 + c3), int(0)],
    ]
}

fn criterion_2() -> Outcome {
    let sk4 = make_subdivision(&make_complete(4).unwrap());
    let s = detect_dbrg_structure(&sk4).ok_or("S(K4) not detected")?;
    let want: Vec<Rational> = vec![ratio(81, 200), ratio(21, 200), ratio(-19, 200), ratio(-29, 200)];
    let row = group_inverse_row(&s.array, Side::Zero).map_err(|e| e.to_string())?;
    if row != want {
        return fail(format!("S(K4) side 0: {:?}", row.iter().map(rational::format).collect::<Vec<_>>()));
    }
    // the same values straight from the dense oracle, at vertex 0 (an original vertex)
    let g = group_inverse(&sk4);
    for y in 0..sk4.order() {
        if g.get(0, y) != &want[s.distances.get(0, y)] {
            return fail("S(K4) oracle row differs from the fixture values");
        }
    }

    let k23 = biregular::network::make_complete_bipartite(2, 3).unwrap();
    let s = detect_dbrg_structure(&k23).ok_or("K_{2,3} not detected")?;
    let want = vec![ratio(17, 75), ratio(-1, 25), ratio(-8, 75)];
    let row = group_inverse_row(&s.array, Side::Zero).map_err(|e| e.to_string())?;
    if row != want {
        return fail("K_{2,3} side 0 entries differ");
    }

    let triples = [[1, 1, 1], [1, 1, 5], [2, 3, 7]];
    for c in triples {
        let net = make_triangle(int(c[0]), int(c[1]), int(c[2])).unwrap();
        let ms = all_equilibria(&net).map_err(|e| e.to_string())?;
        let want = k3_display(c);
        for i in 0..3 {
            let m = &ms[net.index_of(&format!("x{}", i + 1)).unwrap()];
            for j in 0..3 {
                let j_net = net.index_of(&format!("x{}", j + 1)).unwrap();
                if m.values[j_net] != want[i][j] {
                    return fail(format!("K3{c:?}: ν^x{}(x{})", i + 1, j + 1));
                }
            }
            let cap: Rational = want[i].iter().sum();
            if m.capacity != cap {
                return fail(format!("K3{c:?}: cap(x{})", i + 1));
            }
        }
    }
    Ok("S(K4) 81/200, 21/200, -19/200, -29/200; K_{2,3} 17/75, -1/25, -8/75; K3 (1,1,1), (1,1,5), (2,3,7)".into())
}

fn identity_suite(name: &str, net: &Network) -> Result<(), String> {
    let n = net.order();
    let nr = rational::from_u64(n as u64);
    let l = laplacian(net);
    let (g, ms) = group_inverse_with_measures(net);
    check_group_inverse(&l, &g).map_err(|e| format!("{name}: {e:?}"))?;
    // repeated here without the library checker
    let lgl = &(&l * &g) * &l;
    let glg = &(&g * &l) * &g;
    if lgl != l || glg != g || &l * &g != &g * &l || !g.is_symmetric() {
        return fail(format!("{name}: group inverse identities"));
    }
    if g.row_sums().iter().any(|v| !v.is_zero()) {
        return fail(format!("{name}: L#·1 ≠ 0"));
    }
    if g != oracle_group_inverse(net) {
        return fail(format!("{name}: differs from (L + J/n)^-1 - J/n"));
    }
    for y in 0..n {
        if ms[y].capacity != &nr * &nr * g.get(y, y) {
            return fail(format!("{name}: cap({}) ≠ n² L#(y,y)", net.id(y)));
        }
        for x in 0..n {
            if ms[y].values[x] != &nr * (g.get(y, y) - g.get(x, y)) {
                return fail(format!("{name}: ν^y(x) = n(L#(y,y) - L#(x,y)) fails"));
            }
            let lhs = &ms[y].values[x] - &ms[x].values[y];
            let mid = (&ms[y].capacity - &ms[x].capacity) / &nr;
            let rhs = &nr * (g.get(y, y) - g.get(x, x));
            if lhs != mid || mid != rhs {
                return fail(format!("{name}: ν^y(x) - ν^x(y) relation fails"));
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    let mut nets: Vec<(String, Network)> = dbrg_fixtures();
    for c in [[1, 1, 1], [1, 1, 5], [2, 3, 7]] {
        nets.push((format!("K3{c:?}"), make_triangle(int(c[0]), int(c[1]), int(c[2])).unwrap()));
    }
    for (i, net) in random_networks(50, 0x5eed).into_iter().enumerate() {
        nets.push((format!("random #{i}"), net));
    }
    for (name, net) in &nets {
        identity_suite(name, net)?;
        count += 1;
    }
    Ok(format!("{count} networks (50 random), all identities exact"))
}

fn criterion_4() -> Outcome {
    let check = |name: &str, net: &Network, expected: bool| -> Result<(), String> {
        let graph = m_property_general(net).verdict;
        if graph != expected {
            return fail(format!("{name}: graph verdict {graph}, expected {expected}"));
        }
        if let Some(s) = detect_dbrg_structure(net) {
            let array = m_property_array(&s.array).map_err(|e| format!("{name}: {e}"))?.verdict;
            if array != graph {
                return fail(format!("{name}: array verdict {array} vs graph verdict {graph}"));
            }
        }
        Ok(())
    };
    for a in 1..=5 {
        for b in a..=5 {
            check(&format!("K_{{{a},{b}}}"), &biregular::network::make_complete_bipartite(a, b).unwrap(), true)?;
        }
    }
    for r in 2..=5 {
        check(&format!("S(K_{})", r + 1), &make_subdivision(&make_complete(r + 1).unwrap()), false)?;
    }
    for m in 2..=4u64 {
        let p = QsdParams::new(m + 1, m, 1, 1).map_err(|e| e.to_string())?;
        let a = build_case5_array(&p).map_err(|e| e.to_string())?;
        if m_property_array(&a).map_err(|e| e.to_string())?.verdict || qsd_m_condition(&p).unwrap() {
            return fail(format!("affine plane of order {m}: M-property claimed"));
        }
        let net = make_affine_plane(m as usize);
        let s = detect_dbrg_structure(&net).ok_or(format!("AG(2,{m}) not detected"))?;
        if s.array != a {
            return fail(format!("AG(2,{m}): detected {} but built {a}", s.array));
        }
        check(&format!("AG(2,{m})"), &net, false)?;
    }
    for (c, expected) in [([1, 1, 1], true), ([1, 1, 5], false)] {
        let net = make_triangle(int(c[0]), int(c[1]), int(c[2])).unwrap();
        let rule = 3 * c.iter().max().unwrap() <= 2 * c.iter().sum::<i64>();
        if rule != expected {
            return fail("3·max vs 2·sum rule disagrees with the expected verdict");
        }
        check(&format!("K3{c:?}"), &net, expected)?;
    }
    Ok("K_{a,b} true; S(K_{r+1}) false; affine planes 2,3,4 false; K3(1,1,1) true, K3(1,1,5) false".into())
}

fn criterion_5(found: &[SearchRecord], secs: f64) -> Outcome {
    let survivors: Vec<&SearchRecord> = found.iter().filter(|r| r.report.verdict).collect();
    for r in &survivors {
        let (d0, d1) = (r.array.diameter(Side::Zero), r.array.diameter(Side::One));
        if d0 > 3 || d1 > 4 {
            return fail(format!("{} passes with D0 = {d0}, D1 = {d1}", r.array));
        }
        let (k0, k1) = (r.array.k(Side::Zero), r.array.k(Side::One));
        if d0 >= 2 && r.n >= 2 * k1 + k0 {
            return fail(format!("{} passes with n = {} ≥ 2k1 + k0", r.array, r.n));
        }
        if r.case == CaseLabel::OutOfBounds {
            return fail(format!("{} classified out of bounds yet passes", r.array));
        }
    }
    let qsd = survivors.iter().filter(|r| r.case == CaseLabel::QsdD3D4).count();
    if secs > 60.0 {
        return fail(format!("sweep took {secs:.1}s"));
    }
    Ok(format!(
        "{} feasible arrays, {} with the M-property, {qsd} QSD_D3D4 survivors, {secs:.2}s",
        found.len(),
        survivors.len()
    ))
}

fn criterion_6(found: &[SearchRecord]) -> Outcome {
    let mut qsd_checked = 0;
    let mut qsd_feasible = 0;
    let mut qsd_unclosed = 0;
    for p in consistent_qsd_params(20, 20) {
        let by_params = qsd_m_condition(&p).map_err(|e| e.to_string())?;
        let raw = p.raw_array().map_err(|e| e.to_string())?;
        match m_property_array(&raw) {
            Ok(rep) if rep.verdict == by_params => qsd_checked += 1,
            Ok(rep) => return fail(format!("{p:?}: parameters {by_params}, array {}", rep.verdict)),
            // kλ/y ≥ r: the side-1 sequence does not close, so there is no array
            Err(DbrgError::NegativeB { .. }) | Err(DbrgError::ParityViolation { .. }) => qsd_unclosed += 1,
            Err(e) => return fail(format!("{p:?}: {e}")),
        }
        if let Ok(a) = build_case5_array(&p) {
            if m_property_array(&a).map_err(|e| e.to_string())?.verdict != by_params {
                return fail(format!("{p:?}: feasible array disagrees"));
            }
            qsd_feasible += 1;
        }
    }
    let mut drg = 0;
    for k in 2..=12u64 {
        for mu in 1..k {
            let a = case4_array(k, mu).map_err(|e| e.to_string())?;
            let by_array = m_property_array(&a).map_err(|e| format!("k={k} μ={mu}: {e}"))?.verdict;
            if by_array != bipartite_drg_d3_m(k, mu).unwrap() {
                return fail(format!("k={k} μ={mu}: 4k/5 ≤ μ criterion disagrees"));
            }
            drg += 1;
        }
    }
    for r in found {
        // both return FormMismatch if the b-form and c-form differ
        equilibrium_arrays(&r.array).map_err(|e| format!("{}: {e}", r.array))?;
        for side in Side::BOTH {
            group_inverse_row(&r.array, side).map_err(|e| format!("{}: {e}", r.array))?;
        }
    }
    Ok(format!(
        "{qsd_checked} design parameter sets ({qsd_feasible} feasible, {qsd_unclosed} without a closing array), {drg} (k, μ) pairs, {} arrays with matching b/c forms",
        found.len()
    ))
}

fn criterion_7(found: &[SearchRecord]) -> Outcome {
    for r in found {
        let e = equilibrium_arrays(&r.array).map_err(|e| e.to_string())?;
        let counts = derive_counts(&r.array).map_err(|e| e.to_string())?;
        let back = recover_array(&e, [&counts.k0, &counts.k1]).map_err(|e| format!("{}: {e}", r.array))?;
        if back != r.array {
            return fail(format!("{} recovered as {back}", r.array));
        }
    }
    let mut pairs = 0;
    for (name, net) in dbrg_fixtures() {
        let s = detect_dbrg_structure(&net).ok_or(format!("{name}: not detected"))?;
        let ms = all_equilibria(&net).map_err(|e| e.to_string())?;
        let n = rational::from_u64(net.order() as u64);
        for x in 0..net.order() {
            for y in 0..net.order() {
                if x == y {
                    continue;
                }
                let d = s.distances.get(x, y);
                let closed = dbrg_effective_resistance(&s.array, s.side(y), d).map_err(|e| e.to_string())?;
                let oracle = (&ms[x].values[y] + &ms[y].values[x]) / &n;
                let direct = effective_resistance(&net, x, y).map_err(|e| e.to_string())?;
                if closed != oracle || oracle != direct {
                    return fail(format!("{name}: R({}, {}) at distance {d}", net.id(x), net.id(y)));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} arrays recovered; {pairs} ordered pairs of resistances equal", found.len()))
}

fn report(id: usize, title: &str, outcome: Outcome) -> bool {
    match outcome {
        Ok(detail) => {
            println!("criterion {id} ({title}): PASS - {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {id} ({title}): FAIL - {detail}");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= report(1, "closed form vs oracle", criterion_1());
    ok &= report(2, "fixture values", criterion_2());
    ok &= report(3, "identity suite", criterion_3());
    ok &= report(4, "M-property verdicts", criterion_4());
    let start = Instant::now();
    let found = sweep();
    let secs = start.elapsed().as_secs_f64();
    ok &= report(5, "sweep bounds", criterion_5(&found, secs));
    ok &= report(6, "equivalences", criterion_6(&found));
    ok &= report(7, "round trips", criterion_7(&found));
    if !ok {
        std::process::exit(1);
    }
}
