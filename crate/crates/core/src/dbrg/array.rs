use std::fmt;

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::DbrgError;
use crate::rational::{self, Rational};

/// One of the two stable sets of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Zero, Side::One];

    pub fn other(self) -> Side {
        match self {
            Side::Zero => Side::One,
            Side::One => Side::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Zero => 0,
            Side::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Side> {
        match i {
            0 => Some(Side::Zero),
            1 => Some(Side::One),
            _ => None,
        }
    }

    /// Side reached from `self` after `distance` steps in a bipartite graph.
    pub fn after(self, distance: usize) -> Side {
        if distance % 2 == 0 {
            self
        } else {
            self.other()
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Double intersection array `{k_ℓ; c_{ℓ,1}, ..., c_{ℓ,D_ℓ}}`, `ℓ = 0, 1`.
///
/// Only the `c` sequences are stored; `b_{ℓ,i}` follows from the parity rule
/// `c_{ℓ,i} + b_{ℓ,i} = k_ℓ` (i even) or `k_{ℓ̄}` (i odd). Construction only
/// enforces the structural invariants (`1 ≤ D_0 ≤ D_1`, positive entries,
/// `c_{ℓ,1} = 1`); whether the sequences are consistent is for
/// [`derive_counts`] and [`super::validate`] to decide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiregularArray {
    k: [u64; 2],
    c: [Vec<u64>; 2],
}

impl BiregularArray {
    pub fn new(k0: u64, k1: u64, c0: Vec<u64>, c1: Vec<u64>) -> Result<Self, DbrgError> {
        let invalid = |msg: String| Err(DbrgError::InvalidArray(msg));
        if k0 == 0 || k1 == 0 {
            return invalid("valencies must be positive".into());
        }
        if c0.is_empty() || c1.is_empty() {
            return invalid("both c sequences need at least one entry".into());
        }
        if c0.len() > c1.len() {
            return invalid(format!("expected D0 ≤ D1, got D0={} D1={}", c0.len(), c1.len()));
        }
        if c0.iter().chain(&c1).any(|&c| c == 0) {
            return invalid("intersection numbers must be positive".into());
        }
        if c0[0] != 1 || c1[0] != 1 {
            return invalid("c_{ℓ,1} must be 1".into());
        }
        Ok(BiregularArray { k: [k0, k1], c: [c0, c1] })
    }

    pub fn k(&self, side: Side) -> u64 {
        self.k[side.index()]
    }

    pub fn diameter(&self, side: Side) -> usize {
        self.c[side.index()].len()
    }

    /// `c_{ℓ,1..D_ℓ}`
    pub fn c_seq(&self, side: Side) -> &[u64] {
        &self.c[side.index()]
    }

    /// `c_{ℓ,i}` with `c_{ℓ,0} = 0`; `None` beyond `D_ℓ`.
    pub fn c(&self, side: Side, i: usize) -> Option<u64> {
        match i {
            0 => Some(0),
            _ => self.c[side.index()].get(i - 1).copied(),
        }
    }

    /// `c_{ℓ,i} + b_{ℓ,i}` by parity.
    pub fn parity_total(&self, side: Side, i: usize) -> u64 {
        self.k(side.after(i))
    }

    /// `b_{ℓ,i}` from the parity rule, possibly negative for inconsistent arrays.
    /// At `i = D_ℓ` this is zero exactly when the array closes correctly.
    pub fn b(&self, side: Side, i: usize) -> Option<i64> {
        self.c(side, i)
            .map(|c| self.parity_total(side, i) as i64 - c as i64)
    }

    /// Parity consistency: `b_{ℓ,i} > 0` for `i < D_ℓ` and `b_{ℓ,D_ℓ} = 0`.
    pub fn check_parity(&self) -> Result<(), DbrgError> {
        for side in Side::BOTH {
            let d = self.diameter(side);
            for i in 0..d {
                let b = self.b(side, i).expect("index within diameter");
                if b <= 0 {
                    return Err(DbrgError::NegativeB { side, index: i, value: b });
                }
            }
            let last = self.b(side, d).expect("index within diameter");
            if last != 0 {
                return Err(DbrgError::ParityViolation {
                    side,
                    expected: self.parity_total(side, d),
                    found: self.c(side, d).unwrap_or(0),
                });
            }
        }
        Ok(())
    }

    /// Canonical sort key `(n, k0, k1, D0, D1, c0, c1)`; `n` is taken as
    /// given since it needs derived counts.
    pub fn sort_key(&self, n: u64) -> (u64, u64, u64, usize, usize, Vec<u64>, Vec<u64>) {
        (
            n,
            self.k[0],
            self.k[1],
            self.c[0].len(),
            self.c[1].len(),
            self.c[0].clone(),
            self.c[1].clone(),
        )
    }
}

impl fmt::Display for BiregularArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[u64]| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{{{};{} | {};{}}}",
            self.k[0],
            join(&self.c[0]),
            self.k[1],
            join(&self.c[1])
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ArrayJson {
    k0: u64,
    k1: u64,
    #[serde(rename = "D0")]
    d0: usize,
    #[serde(rename = "D1")]
    d1: usize,
    c0: Vec<u64>,
    c1: Vec<u64>,
}

impl Serialize for BiregularArray {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ArrayJson {
            k0: self.k[0],
            k1: self.k[1],
            d0: self.c[0].len(),
            d1: self.c[1].len(),
            c0: self.c[0].clone(),
            c1: self.c[1].clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiregularArray {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ArrayJson::deserialize(d)?;
        if raw.d0 != raw.c0.len() || raw.d1 != raw.c1.len() {
            return Err(de::Error::custom(format!(
                "declared diameters ({}, {}) do not match c sequence lengths ({}, {})",
                raw.d0,
                raw.d1,
                raw.c0.len(),
                raw.c1.len()
            )));
        }
        BiregularArray::new(raw.k0, raw.k1, raw.c0, raw.c1).map_err(de::Error::custom)
    }
}

/// Sphere sizes `k_{ℓ,i}`, ball sizes `B_{ℓ,i}` and the common order `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedCounts {
    pub k0: Vec<u64>,
    pub k1: Vec<u64>,
    #[serde(rename = "B0")]
    pub ball0: Vec<u64>,
    #[serde(rename = "B1")]
    pub ball1: Vec<u64>,
    pub n: u64,
}

impl DerivedCounts {
    pub fn spheres(&self, side: Side) -> &[u64] {
        match side {
            Side::Zero => &self.k0,
            Side::One => &self.k1,
        }
    }

    pub fn balls(&self, side: Side) -> &[u64] {
        match side {
            Side::Zero => &self.ball0,
            Side::One => &self.ball1,
        }
    }
}

/// Exact (possibly fractional) layer sizes of a parity-consistent array.
///
/// The closed forms only need `k_{ℓ,i} b_{ℓ,i} = k_{ℓ,i+1} c_{ℓ,i+1}`, which
/// holds here by construction, so they can be evaluated on arrays whose
/// counts are not integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Layers {
    pub spheres: [Vec<Rational>; 2],
    pub balls: [Vec<Rational>; 2],
    pub n: Rational,
}

impl Layers {
    pub fn spheres(&self, side: Side) -> &[Rational] {
        &self.spheres[side.index()]
    }

    pub fn balls(&self, side: Side) -> &[Rational] {
        &self.balls[side.index()]
    }
}

fn side_layers(a: &BiregularArray, side: Side) -> Vec<Rational> {
    let mut k = vec![Rational::one()];
    for i in 0..a.diameter(side) {
        let b = rational::int(a.b(side, i).expect("index within diameter"));
        let c = rational::from_u64(a.c(side, i + 1).expect("index within diameter"));
        let next = &k[i] * b / c;
        k.push(next);
    }
    k
}

fn prefix_sums(values: &[Rational]) -> Vec<Rational> {
    values
        .iter()
        .scan(Rational::zero(), |acc, v| {
            *acc += v;
            Some(acc.clone())
        })
        .collect()
}

/// Rational layers; requires parity consistency and equal totals.
pub(crate) fn layers(a: &BiregularArray) -> Result<Layers, DbrgError> {
    a.check_parity()?;
    let spheres = [side_layers(a, Side::Zero), side_layers(a, Side::One)];
    let balls = [prefix_sums(&spheres[0]), prefix_sums(&spheres[1])];
    let n0 = balls[0].last().expect("nonempty").clone();
    let n1 = balls[1].last().expect("nonempty").clone();
    if n0 != n1 {
        return Err(DbrgError::TotalMismatch {
            n0: rational::format(&n0),
            n1: rational::format(&n1),
        });
    }
    Ok(Layers { spheres, balls, n: n0 })
}

/// Integral sphere and ball sizes from the product formula
/// `k_{ℓ,i+1} = k_{ℓ,i} b_{ℓ,i} / c_{ℓ,i+1}`.
pub fn derive_counts(a: &BiregularArray) -> Result<DerivedCounts, DbrgError> {
    a.check_parity()?;
    let mut spheres: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    for side in Side::BOTH {
        let layer = side_layers(a, side);
        for (i, k) in layer.iter().enumerate() {
            match rational::to_u64(k) {
                Some(v) => spheres[side.index()].push(v),
                None => {
                    return Err(DbrgError::NonIntegralCount {
                        side,
                        index: i,
                        value: rational::format(k),
                    })
                }
            }
        }
    }
    let sums = |v: &[u64]| -> Vec<u64> {
        v.iter()
            .scan(0u64, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let [k0, k1] = spheres;
    let (ball0, ball1) = (sums(&k0), sums(&k1));
    let (n0, n1) = (*ball0.last().expect("nonempty"), *ball1.last().expect("nonempty"));
    if n0 != n1 {
        return Err(DbrgError::TotalMismatch {
            n0: n0.to_string(),
            n1: n1.to_string(),
        });
    }
    Ok(DerivedCounts {
        k0,
        k1,
        ball0,
        ball1,
        n: n0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k23() -> BiregularArray {
        BiregularArray::new(3, 2, vec![1, 3], vec![1, 2]).unwrap()
    }

    pub(crate) fn s_k4() -> BiregularArray {
        BiregularArray::new(3, 2, vec![1, 1, 2], vec![1, 1, 2, 2]).unwrap()
    }

    #[test]
    fn b_from_parity() {
        let a = s_k4();
        let b0: Vec<i64> = (0..=3).map(|i| a.b(Side::Zero, i).unwrap()).collect();
        let b1: Vec<i64> = (0..=4).map(|i| a.b(Side::One, i).unwrap()).collect();
        assert_eq!(b0, vec![3, 1, 2, 0]);
        assert_eq!(b1, vec![2, 2, 1, 1, 0]);
        assert_eq!(a.b(Side::Zero, 4), None);
    }

    #[test]
    fn counts_k23() {
        let c = derive_counts(&k23()).unwrap();
        assert_eq!(c.k0, vec![1, 3, 1]);
        assert_eq!(c.k1, vec![1, 2, 2]);
        assert_eq!(c.n, 5);
    }

    #[test]
    fn counts_s_k4() {
        let c = derive_counts(&s_k4()).unwrap();
        assert_eq!(c.k0, vec![1, 3, 3, 3]);
        assert_eq!(c.k1, vec![1, 2, 4, 2, 1]);
        assert_eq!(c.ball1, vec![1, 3, 7, 9, 10]);
        // |V(K4)| + |E(K4)|
        assert_eq!(c.n, 4 + 6);
    }

    #[test]
    fn total_mismatch() {
        // c_{1,4} altered: closes with b_{1,4}=0 only if c_{1,4}=k_1, so alter
        // c_{1,3} together with the side-1 diameter to keep parity intact
        let a = BiregularArray::new(3, 2, vec![1, 1, 2], vec![1, 1, 1, 2]).unwrap();
        assert!(matches!(
            derive_counts(&a),
            Err(DbrgError::TotalMismatch { .. })
        ));
    }

    #[test]
    fn parity_and_sign_errors() {
        let a = BiregularArray::new(3, 2, vec![1, 1, 2], vec![1, 1, 2, 1]).unwrap();
        assert!(matches!(derive_counts(&a), Err(DbrgError::ParityViolation { .. })));
        let a = BiregularArray::new(3, 2, vec![1, 4, 3], vec![1, 1, 2, 2]).unwrap();
        assert!(matches!(
            derive_counts(&a),
            Err(DbrgError::NegativeB { side: Side::Zero, index: 2, .. })
        ));
    }

    #[test]
    fn non_integral() {
        // {k;1,μ,k} with μ ∤ k(k-1)
        let a = BiregularArray::new(5, 5, vec![1, 3, 5], vec![1, 3, 5]).unwrap();
        assert!(matches!(
            derive_counts(&a),
            Err(DbrgError::NonIntegralCount { index: 2, .. })
        ));
        // the rational layers still exist
        assert!(layers(&a).is_ok());
    }

    #[test]
    fn constructor_invariants() {
        assert!(BiregularArray::new(2, 2, vec![1, 1, 2], vec![1, 2]).is_err());
        assert!(BiregularArray::new(2, 2, vec![2], vec![1]).is_err());
        assert!(BiregularArray::new(0, 2, vec![1], vec![1]).is_err());
        assert!(BiregularArray::new(2, 2, vec![], vec![1]).is_err());
    }

    #[test]
    fn json_schema() {
        let text = serde_json::to_string(&s_k4()).unwrap();
        assert_eq!(text, r#"{"k0":3,"k1":2,"D0":3,"D1":4,"c0":[1,1,2],"c1":[1,1,2,2]}"#);
        let back: BiregularArray = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s_k4());
        let bad = r#"{"k0":3,"k1":2,"D0":2,"D1":4,"c0":[1,1,2],"c1":[1,1,2,2]}"#;
        assert!(serde_json::from_str::<BiregularArray>(bad).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s_k4().to_string(), "{3;1,1,2 | 2;1,1,2,2}");
    }
}
