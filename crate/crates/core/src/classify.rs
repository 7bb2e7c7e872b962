//! Diameter-bounded case analysis of distance-biregular graphs with the
//! M-property, the two parameter criteria for the surviving cases, and a
//! bounded exhaustive sweep over double intersection arrays.

use std::collections::BTreeMap;

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dbrg::{m_property_array, validate, BiregularArray, DbrgError, Side};
use crate::potential::{MReport, MTest, Witness};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("inconsistent design parameters: {which}")]
    InconsistentParams { which: String },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("(D0, D1, k0, k1) = ({d0}, {d1}, {k0}, {k1}) is not a feasible diameter case")]
    UnlistedCase { d0: usize, d1: usize, k0: u64, k1: u64 },
    #[error(transparent)]
    Dbrg(#[from] DbrgError),
}

/// Which of the five M-property candidate families an array belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    Digon,
    Star,
    CompleteBipartite,
    #[serde(rename = "BipartiteDRG_D3")]
    BipartiteDrgD3,
    #[serde(rename = "QSD_D3D4")]
    QsdD3D4,
    OutOfBounds,
}

impl CaseLabel {
    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::Digon => "Digon",
            CaseLabel::Star => "Star",
            CaseLabel::CompleteBipartite => "CompleteBipartite",
            CaseLabel::BipartiteDrgD3 => "BipartiteDRG_D3",
            CaseLabel::QsdD3D4 => "QSD_D3D4",
            CaseLabel::OutOfBounds => "OutOfBounds",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Maps an array to its case by `(D0, D1, k0, k1)`.
///
/// Anything with `D0 > 3` or `D1 > 4` is [`CaseLabel::OutOfBounds`]: such
/// graphs never have the M-property. Inside the bounds every array that
/// passes [`validate`] lands in one of the five cases; other combinations are
/// reported as [`ClassifyError::UnlistedCase`].
pub fn classify_case(a: &BiregularArray) -> Result<CaseLabel, ClassifyError> {
    let (d0, d1) = (a.diameter(Side::Zero), a.diameter(Side::One));
    let (k0, k1) = (a.k(Side::Zero), a.k(Side::One));
    if d0 > 3 || d1 > 4 {
        return Ok(CaseLabel::OutOfBounds);
    }
    match (d0, d1) {
        (1, 1) => Ok(CaseLabel::Digon),
        (1, 2) => Ok(CaseLabel::Star),
        (2, 2) => Ok(CaseLabel::CompleteBipartite),
        (3, 3) if k0 == k1 => Ok(CaseLabel::BipartiteDrgD3),
        (3, 4) if k0 > k1 => Ok(CaseLabel::QsdD3D4),
        _ => Err(ClassifyError::UnlistedCase { d0, d1, k0, k1 }),
    }
}

/// The array `{k; 1, μ, k}` of a bipartite distance-regular graph of diameter 3.
pub fn case4_array(k: u64, mu: u64) -> Result<BiregularArray, ClassifyError> {
    check_mu(k, mu)?;
    Ok(BiregularArray::new(k, k, vec![1, mu, k], vec![1, mu, k])?)
}

fn check_mu(k: u64, mu: u64) -> Result<(), ClassifyError> {
    if mu == 0 || mu + 1 > k {
        return Err(ClassifyError::ParamOutOfRange(format!(
            "need 1 ≤ μ ≤ k - 1, got k = {k}, μ = {mu}"
        )));
    }
    Ok(())
}

/// M-property of a bipartite distance-regular graph of diameter 3:
/// `4k/5 ≤ μ ≤ k - 1`.
pub fn bipartite_drg_d3_m(k: u64, mu: u64) -> Result<bool, ClassifyError> {
    check_mu(k, mu)?;
    Ok(5 * mu >= 4 * k)
}

/// Parameters of a quasi-symmetric 2-design with intersection numbers `0 < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QsdParams {
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub y: u64,
}

impl QsdParams {
    /// Builds and checks the parameters.
    pub fn new(r: u64, k: u64, lambda: u64, y: u64) -> Result<Self, ClassifyError> {
        let p = QsdParams { r, k, lambda, y };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<(), ClassifyError> {
        let QsdParams { r, k, lambda, y } = *self;
        let fail = |which: String| Err(ClassifyError::InconsistentParams { which });
        if r == 0 || k == 0 || lambda == 0 || y == 0 {
            return fail("all parameters must be positive".into());
        }
        if r <= lambda {
            return fail(format!("r > λ fails: r = {r}, λ = {lambda}"));
        }
        if y >= k {
            return fail(format!("0 < y < k fails: y = {y}, k = {k}"));
        }
        if (y - 1) * (r - 1) != (k - 1) * (lambda - 1) {
            return fail(format!(
                "(y-1)(r-1) = {} differs from (k-1)(λ-1) = {}",
                (y - 1) * (r - 1),
                (k - 1) * (lambda - 1)
            ));
        }
        if (k * lambda) % y != 0 {
            return fail(format!("y = {y} does not divide kλ = {}", k * lambda));
        }
        Ok(())
    }

    /// The array `{r; 1, λ, k | k; 1, y, kλ/y, k}` without the feasibility check.
    pub fn raw_array(&self) -> Result<BiregularArray, ClassifyError> {
        self.check()?;
        let QsdParams { r, k, lambda, y } = *self;
        Ok(BiregularArray::new(
            r,
            k,
            vec![1, lambda, k],
            vec![1, y, k * lambda / y, k],
        )?)
    }
}

/// `(k-1)(r-λ)((k+r)² - λk) ≤ k²λ²`, exactly.
pub fn qsd_m_condition(p: &QsdParams) -> Result<bool, ClassifyError> {
    p.check()?;
    let (r, k, l) = (p.r as i128, p.k as i128, p.lambda as i128);
    let lhs = (k - 1) * (r - l) * ((k + r) * (k + r) - l * k);
    Ok(lhs <= k * k * l * l)
}

/// Same verdict as [`qsd_m_condition`], with the inequality as witness.
pub fn qsd_m_report(p: &QsdParams) -> Result<MReport, ClassifyError> {
    p.check()?;
    let (r, k, l) = (p.r as i64, p.k as i64, p.lambda as i64);
    let lhs = rational::int((k - 1) * (r - l) * ((k + r) * (k + r) - l * k));
    let rhs = rational::int(k * k * l * l);
    Ok(if lhs <= rhs {
        MReport::pass(MTest::QuasiSymmetricDesign)
    } else {
        MReport::fail(
            MTest::QuasiSymmetricDesign,
            Witness::Inequality {
                subject: "design parameters".into(),
                lhs,
                rhs,
            },
        )
    })
}

/// The incidence-graph array of the design; it must pass [`validate`].
pub fn build_case5_array(p: &QsdParams) -> Result<BiregularArray, ClassifyError> {
    let a = p.raw_array()?;
    let report = validate(&a);
    if !report.passed {
        let ids: Vec<&str> = report.failures.iter().map(|f| f.condition.id()).collect();
        return Err(ClassifyError::InconsistentParams {
            which: format!("array {a} fails {}", ids.join(", ")),
        });
    }
    Ok(a)
}

/// Every `QsdParams` with `r ≤ max_r`, `k ≤ max_k` satisfying the invariants.
pub fn consistent_qsd_params(max_r: u64, max_k: u64) -> Vec<QsdParams> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        for k in 2..=max_k {
            for lambda in 1..r {
                for y in 1..k {
                    let p = QsdParams { r, k, lambda, y };
                    if p.check().is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_k: u64,
    pub max_d: usize,
    pub max_n: u64,
}

/// One validated array found by [`search_arrays`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub array: BiregularArray,
    pub n: u64,
    pub report: MReport,
    pub case: CaseLabel,
    /// Realizability conditions noticed but not enforced.
    pub flags: Vec<String>,
}

#[derive(Serialize)]
struct SearchLine<'a> {
    array: &'a BiregularArray,
    m_property: bool,
    case: CaseLabel,
    n: u64,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    flags: &'a [String],
}

impl SearchRecord {
    /// The JSON-lines form `{"array", "m_property", "case", "n"}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&SearchLine {
            array: &self.array,
            m_property: self.report.verdict,
            case: self.case,
            n: self.n,
            flags: &self.flags,
        })
        .expect("search record serializes")
    }
}

fn realizability_flags(a: &BiregularArray, case: CaseLabel) -> Vec<String> {
    let mut flags = Vec::new();
    if case == CaseLabel::BipartiteDrgD3 {
        let k = a.k(Side::Zero);
        let mu = a.c(Side::Zero, 2).unwrap_or(0);
        let diff = k - mu;
        if mu + 1 < k && diff.sqrt() * diff.sqrt() != diff {
            flags.push(format!("k - mu = {diff} is not a square"));
        }
    }
    flags
}

/// c-sequences of one side, grouped by diameter, with their ball totals.
///
/// `k_start` is the valency on the starting side, `k_other` on the opposite
/// one. Sphere sizes must stay integral and the running ball at most `max_n`.
fn side_sequences(k_start: u64, k_other: u64, b: &SearchBounds) -> BTreeMap<usize, Vec<(Vec<u64>, u64)>> {
    fn walk(
        ks: [u64; 2],
        b: &SearchBounds,
        seq: &mut Vec<u64>,
        sphere: u64,
        bnext: u64,
        ball: u64,
        out: &mut BTreeMap<usize, Vec<(Vec<u64>, u64)>>,
    ) {
        let i = seq.len() + 1;
        let total = ks[i % 2];
        let top = if i == 1 { 1 } else { total };
        for c in 1..=top {
            let num = sphere * bnext;
            if num % c != 0 {
                continue;
            }
            let next = num / c;
            let ball = ball + next;
            if ball > b.max_n {
                continue;
            }
            seq.push(c);
            if c == total {
                out.entry(i).or_default().push((seq.clone(), ball));
            } else if i < b.max_d {
                walk(ks, b, seq, next, total - c, ball, out);
            }
            seq.pop();
        }
    }
    let mut out = BTreeMap::new();
    if 1 <= b.max_n {
        walk([k_start, k_other], b, &mut Vec::new(), 1, k_start, 1, &mut out);
    }
    out
}

fn search_pair(k0: u64, k1: u64, bounds: &SearchBounds) -> Result<Vec<SearchRecord>, ClassifyError> {
    let left = side_sequences(k0, k1, bounds);
    let right = side_sequences(k1, k0, bounds);
    let mut found = Vec::new();
    for (&d0, seqs0) in &left {
        for seqs1 in right.range(d0..).map(|(_, s)| s) {
            for (c0, n0) in seqs0 {
                for (c1, n1) in seqs1 {
                    if n0 != n1 {
                        continue;
                    }
                    let a = BiregularArray::new(k0, k1, c0.clone(), c1.clone())?;
                    if !validate(&a).passed {
                        continue;
                    }
                    let report = m_property_array(&a)?;
                    let case = classify_case(&a)?;
                    let flags = realizability_flags(&a, case);
                    found.push(SearchRecord {
                        array: a,
                        n: *n0,
                        report,
                        case,
                        flags,
                    });
                }
            }
        }
    }
    Ok(found)
}

/// Every validated array with `k_ℓ ≤ max_k`, `D_ℓ ≤ max_d`, `n ≤ max_n`,
/// sorted by `(n, k0, k1, D0, D1, c0, c1)`.
///
/// Results are "feasible arrays": only the local conditions of [`validate`]
/// are applied, not existence of a graph.
pub fn search_arrays(bounds: SearchBounds) -> Result<Vec<SearchRecord>, ClassifyError> {
    let pairs: Vec<(u64, u64)> = (1..=bounds.max_k)
        .flat_map(|k0| (1..=bounds.max_k).map(move |k1| (k0, k1)))
        .collect();
    let parts: Vec<Vec<SearchRecord>> = pairs
        .par_iter()
        .map(|&(k0, k1)| search_pair(k0, k1, &bounds))
        .collect::<Result<_, _>>()?;
    let mut all: Vec<SearchRecord> = parts.into_iter().flatten().collect();
    all.sort_by_cached_key(|r| r.array.sort_key(r.n));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbrg::derive_counts;

    fn arr(k0: u64, k1: u64, c0: &[u64], c1: &[u64]) -> BiregularArray {
        BiregularArray::new(k0, k1, c0.to_vec(), c1.to_vec()).unwrap()
    }

    #[test]
    fn case_labels() {
        assert_eq!(classify_case(&arr(1, 1, &[1], &[1])).unwrap(), CaseLabel::Digon);
        assert_eq!(classify_case(&arr(4, 1, &[1], &[1, 1])).unwrap(), CaseLabel::Star);
        assert_eq!(classify_case(&arr(3, 2, &[1, 3], &[1, 2])).unwrap(), CaseLabel::CompleteBipartite);
        assert_eq!(classify_case(&arr(3, 3, &[1, 1, 3], &[1, 1, 3])).unwrap(), CaseLabel::BipartiteDrgD3);
        assert_eq!(classify_case(&arr(4, 3, &[1, 1, 3], &[1, 1, 3, 3])).unwrap(), CaseLabel::QsdD3D4);
        assert_eq!(classify_case(&arr(3, 2, &[1, 1, 2], &[1, 1, 2, 2])).unwrap(), CaseLabel::QsdD3D4);
        assert_eq!(classify_case(&arr(2, 2, &[1, 1, 1, 2], &[1, 1, 1, 2])).unwrap(), CaseLabel::OutOfBounds);
        assert!(classify_case(&arr(2, 2, &[1, 1], &[1, 1, 2])).is_err());
    }

    #[test]
    fn case_label_names() {
        let s = serde_json::to_string(&CaseLabel::QsdD3D4).unwrap();
        assert_eq!(s, "\"QSD_D3D4\"");
        let back: CaseLabel = serde_json::from_str("\"BipartiteDRG_D3\"").unwrap();
        assert_eq!(back, CaseLabel::BipartiteDrgD3);
        assert_eq!(CaseLabel::BipartiteDrgD3.to_string(), "BipartiteDRG_D3");
    }

    #[test]
    fn diameter_three_criterion() {
        assert!(bipartite_drg_d3_m(5, 4).unwrap());
        assert!(!bipartite_drg_d3_m(4, 3).unwrap());
        assert!(!bipartite_drg_d3_m(10, 7).unwrap());
        assert!(bipartite_drg_d3_m(10, 8).unwrap());
        assert!(bipartite_drg_d3_m(3, 3).is_err());
        assert!(bipartite_drg_d3_m(3, 0).is_err());
    }

    #[test]
    fn affine_plane() {
        let p = QsdParams::new(4, 3, 1, 1).unwrap();
        assert!(!qsd_m_condition(&p).unwrap());
        let a = build_case5_array(&p).unwrap();
        assert_eq!(a, arr(4, 3, &[1, 1, 3], &[1, 1, 3, 3]));
        assert_eq!(derive_counts(&a).unwrap().n, 21);
        let rep = qsd_m_report(&p).unwrap();
        assert!(!rep.verdict);
    }

    #[test]
    fn inconsistent_params() {
        assert!(QsdParams::new(4, 3, 2, 1).is_err());
        assert!(QsdParams::new(2, 3, 2, 1).is_err());
        assert!(QsdParams::new(4, 3, 1, 3).is_err());
        // (y-1)(r-1) = (k-1)(λ-1) holds, y ∤ kλ
        let p = QsdParams { r: 5, k: 3, lambda: 3, y: 2 };
        assert!(matches!(
            p.check(),
            Err(ClassifyError::InconsistentParams { which }) if which.contains("divide")
        ));
    }

    #[test]
    fn lambda_one_never_passes() {
        for r in 2..=20 {
            for k in 2..=20 {
                let p = QsdParams { r, k, lambda: 1, y: 1 };
                assert!(!qsd_m_condition(&p).unwrap(), "r={r} k={k}");
            }
        }
    }

    #[test]
    fn consistent_enumeration() {
        let ps = consistent_qsd_params(6, 6);
        assert!(ps.contains(&QsdParams { r: 4, k: 3, lambda: 1, y: 1 }));
        assert!(ps.iter().all(|p| p.check().is_ok()));
    }

    #[test]
    fn small_search() {
        let bounds = SearchBounds { max_k: 3, max_d: 4, max_n: 12 };
        let found = search_arrays(bounds).unwrap();
        let arrays: Vec<String> = found.iter().map(|r| r.array.to_string()).collect();
        assert!(arrays.contains(&"{3;1,3 | 2;1,2}".to_string()));
        assert!(arrays.contains(&"{3;1,1,2 | 2;1,1,2,2}".to_string()));
        assert!(arrays.contains(&"{2;1,1,1,2 | 2;1,1,1,2}".to_string()));
        let keys: Vec<_> = found.iter().map(|r| r.array.sort_key(r.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for r in &found {
            if r.case == CaseLabel::CompleteBipartite {
                assert!(r.report.verdict);
            }
        }
        let line = found[0].to_json_line();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert!(v.get("array").is_some() && v.get("m_property").is_some());
        assert!(v.get("case").is_some() && v.get("n").is_some());
    }
}
