//! Closed forms over a double intersection array: equilibrium arrays,
//! capacities, group inverse entries, effective resistances and the
//! M-property inequality.

use num_traits::{One, Zero};
use serde::Serialize;

use super::array::{derive_counts, layers, BiregularArray, Layers, Side};
use super::DbrgError;
use crate::potential::{MReport, MTest, Witness};
use crate::rational::{self, Rational};

/// Equilibrium arrays `q_{ℓ,0..D_ℓ}` of both stable sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DbrgEquilibrium {
    #[serde(with = "rational::serde_vec")]
    pub q0: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub q1: Vec<Rational>,
}

impl DbrgEquilibrium {
    pub fn q(&self, side: Side) -> &[Rational] {
        match side {
            Side::Zero => &self.q0,
            Side::One => &self.q1,
        }
    }
}

fn r(v: u64) -> Rational {
    rational::from_u64(v)
}

fn b_at(a: &BiregularArray, side: Side, i: usize) -> Rational {
    rational::int(a.b(side, i).expect("index within diameter"))
}

fn c_at(a: &BiregularArray, side: Side, i: usize) -> Rational {
    r(a.c(side, i).expect("index within diameter"))
}

/// `(n - B_{ℓ,j}) / (k_{ℓ,j} b_{ℓ,j})` for `j = 0..D_ℓ-1`: the increments of `q`.
fn b_steps(a: &BiregularArray, lay: &Layers, side: Side) -> Vec<Rational> {
    let (k, ball) = (lay.spheres(side), lay.balls(side));
    (0..a.diameter(side))
        .map(|j| (&lay.n - &ball[j]) / (&k[j] * b_at(a, side, j)))
        .collect()
}

/// `(n - B_{ℓ,j-1}) / (k_{ℓ,j} c_{ℓ,j})` for `j = 1..D_ℓ`, stored at `j - 1`.
fn c_steps(a: &BiregularArray, lay: &Layers, side: Side) -> Vec<Rational> {
    let (k, ball) = (lay.spheres(side), lay.balls(side));
    (1..=a.diameter(side))
        .map(|j| (&lay.n - &ball[j - 1]) / (&k[j] * c_at(a, side, j)))
        .collect()
}

fn partial_sums(steps: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for s in steps {
        let next = out.last().expect("nonempty") + s;
        out.push(next);
    }
    out
}

fn q_side(a: &BiregularArray, lay: &Layers, side: Side) -> Result<Vec<Rational>, DbrgError> {
    let by_b = partial_sums(&b_steps(a, lay, side));
    let by_c = partial_sums(&c_steps(a, lay, side));
    if let Some(m) = (0..by_b.len()).find(|&m| by_b[m] != by_c[m]) {
        return Err(DbrgError::FormMismatch {
            what: format!("q_{{{side},{m}}}"),
            b_form: rational::format(&by_b[m]),
            c_form: rational::format(&by_c[m]),
        });
    }
    if by_b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DbrgError::FormMismatch {
            what: format!("monotonicity of q_{side}"),
            b_form: "not strictly increasing".into(),
            c_form: "not strictly increasing".into(),
        });
    }
    Ok(by_b)
}

/// Equilibrium arrays from both closed forms, asserted equal.
pub fn equilibrium_arrays(a: &BiregularArray) -> Result<DbrgEquilibrium, DbrgError> {
    derive_counts(a)?;
    let lay = layers(a)?;
    Ok(DbrgEquilibrium {
        q0: q_side(a, &lay, Side::Zero)?,
        q1: q_side(a, &lay, Side::One)?,
    })
}

/// Checks `q_{ℓ,m} = q_{ℓ̄,m} + (n-1)(1/k_ℓ - 1/k_{ℓ̄})` at every odd shared
/// distance `m`, the distances at which the two endpoints lie on different
/// stable sets.
pub fn cross_relation_check(e: &DbrgEquilibrium, a: &BiregularArray) -> bool {
    let Ok(lay) = layers(a) else {
        return false;
    };
    let shared = a.diameter(Side::Zero).min(a.diameter(Side::One));
    let shift = (&lay.n - Rational::one())
        * (Rational::one() / r(a.k(Side::Zero)) - Rational::one() / r(a.k(Side::One)));
    if e.q0.len() <= shared || e.q1.len() <= shared {
        return false;
    }
    (1..=shared)
        .step_by(2)
        .all(|m| e.q0[m] == &e.q1[m] + &shift)
}

/// `cap(y) = Σ_j (n - B_{ℓ,j-1})² / (k_{ℓ,j} c_{ℓ,j})` for `y` on `side`.
pub fn dbrg_capacity(a: &BiregularArray, side: Side) -> Result<Rational, DbrgError> {
    derive_counts(a)?;
    let lay = layers(a)?;
    Ok(capacity_from(a, &lay, side))
}

fn capacity_from(a: &BiregularArray, lay: &Layers, side: Side) -> Rational {
    let ball = lay.balls(side);
    c_steps(a, lay, side)
        .iter()
        .enumerate()
        .map(|(t, step)| step * (&lay.n - &ball[t]))
        .sum()
}

fn entry_c_form(a: &BiregularArray, lay: &Layers, side: Side, j: usize) -> Rational {
    let steps = c_steps(a, lay, side);
    let ball = lay.balls(side);
    let n = &lay.n;
    let head: Rational = steps[j..].iter().sum();
    let tail: Rational = steps
        .iter()
        .enumerate()
        .map(|(t, s)| s * &ball[t])
        .sum();
    head / n - tail / (n * n)
}

fn entry_b_form(a: &BiregularArray, lay: &Layers, side: Side, j: usize) -> Rational {
    let steps = b_steps(a, lay, side);
    let ball = lay.balls(side);
    let n = &lay.n;
    let head: Rational = steps[j..].iter().sum();
    let tail: Rational = steps
        .iter()
        .enumerate()
        .map(|(t, s)| s * &ball[t])
        .sum();
    head / n - tail / (n * n)
}

/// `L#(x, y)` for `y` on `side` and `d(x, y) = j`, from both closed forms.
pub fn group_inverse_entry(a: &BiregularArray, side: Side, j: usize) -> Result<Rational, DbrgError> {
    let d = a.diameter(side);
    if j > d {
        return Err(DbrgError::DistanceOutOfRange { side, distance: j, max: d });
    }
    derive_counts(a)?;
    let lay = layers(a)?;
    entry_checked(a, &lay, side, j)
}

fn entry_checked(a: &BiregularArray, lay: &Layers, side: Side, j: usize) -> Result<Rational, DbrgError> {
    let by_c = entry_c_form(a, lay, side, j);
    let by_b = entry_b_form(a, lay, side, j);
    if by_c != by_b {
        return Err(DbrgError::FormMismatch {
            what: format!("L#_{{{side},{j}}}"),
            b_form: rational::format(&by_b),
            c_form: rational::format(&by_c),
        });
    }
    Ok(by_c)
}

/// All entries `L#_{ℓ,0..D_ℓ}` for one side.
pub fn group_inverse_row(a: &BiregularArray, side: Side) -> Result<Vec<Rational>, DbrgError> {
    derive_counts(a)?;
    let lay = layers(a)?;
    (0..=a.diameter(side))
        .map(|j| entry_checked(a, &lay, side, j))
        .collect()
}

/// Effective resistance between `y` on `side_of_y` and a vertex at distance
/// `dist`; the other endpoint's side follows from the parity of `dist`.
pub fn dbrg_effective_resistance(
    a: &BiregularArray,
    side_of_y: Side,
    dist: usize,
) -> Result<Rational, DbrgError> {
    let d = a.diameter(side_of_y);
    if dist == 0 || dist > d {
        return Err(DbrgError::DistanceOutOfRange {
            side: side_of_y,
            distance: dist,
            max: d,
        });
    }
    let e = equilibrium_arrays(a)?;
    let lay = layers(a)?;
    let side_of_x = side_of_y.after(dist);
    let n = &lay.n;
    let correction = (n - Rational::one()) / n
        * (Rational::one() / r(a.k(side_of_x)) - Rational::one() / r(a.k(side_of_y)));
    Ok(rational::int(2) / n * &e.q(side_of_y)[dist] + correction)
}

/// Left side of the M-property inequality for one stable set:
/// `Σ_{j=1}^{D-1} (Σ_{i>j} k_i)² / (k_j b_j)`, with right side `(n-1)/k`.
fn m_inequality(a: &BiregularArray, lay: &Layers, side: Side) -> (Rational, Rational) {
    let k = lay.spheres(side);
    let d = a.diameter(side);
    let lhs = (1..d)
        .map(|j| {
            let tail: Rational = k[j + 1..].iter().sum();
            &tail * &tail / (&k[j] * b_at(a, side, j))
        })
        .sum();
    let rhs = (&lay.n - Rational::one()) / r(a.k(side));
    (lhs, rhs)
}

/// M-property of a distance-biregular array, evaluated on both stable sets.
///
/// Needs parity consistency and equal totals; the layer sizes may be
/// fractional. The two side forms must agree, otherwise the array cannot be
/// realized and [`DbrgError::SideFormsDisagree`] is returned.
pub fn m_property_array(a: &BiregularArray) -> Result<MReport, DbrgError> {
    let lay = layers(a)?;
    let (lhs0, rhs0) = m_inequality(a, &lay, Side::Zero);
    let (lhs1, rhs1) = m_inequality(a, &lay, Side::One);
    let (ok0, ok1) = (lhs0 <= rhs0, lhs1 <= rhs1);
    if ok0 != ok1 {
        return Err(DbrgError::SideFormsDisagree {
            side0: ok0,
            side1: ok1,
        });
    }
    if ok0 {
        Ok(MReport::pass(MTest::IntersectionArray))
    } else {
        Ok(MReport::fail(
            MTest::IntersectionArray,
            Witness::Inequality {
                subject: "side 0".into(),
                lhs: lhs0,
                rhs: rhs0,
            },
        ))
    }
}

/// `n < 2k_1 + k_0`, necessary for the M-property when `D_0 ≥ 2`.
pub fn necessary_condition(a: &BiregularArray) -> Result<bool, DbrgError> {
    let d0 = a.diameter(Side::Zero);
    if d0 < 2 {
        return Err(DbrgError::DiameterTooSmall(d0));
    }
    let lay = layers(a)?;
    Ok(lay.n < r(2 * a.k(Side::One) + a.k(Side::Zero)))
}

/// Rebuilds the intersection array from equilibrium arrays and sphere sizes.
///
/// `mults[ℓ][i]` is the number of vertices at distance `i` from a vertex on
/// side `ℓ`.
pub fn recover_array(e: &DbrgEquilibrium, mults: [&[u64]; 2]) -> Result<BiregularArray, DbrgError> {
    let mut c_seqs: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    let mut b_seqs: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    for side in Side::BOTH {
        let q = e.q(side);
        let m = mults[side.index()];
        if q.len() != m.len() || q.len() < 2 {
            return Err(DbrgError::RecoveryInput(format!(
                "side {side}: {} levels but {} multiplicities",
                q.len(),
                m.len()
            )));
        }
        if m[0] != 1 || m.iter().any(|&v| v == 0) {
            return Err(DbrgError::RecoveryInput(format!(
                "side {side}: multiplicities must be positive with m_0 = 1"
            )));
        }
        if !q[0].is_zero() || q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DbrgError::RecoveryInput(format!(
                "side {side}: levels must start at 0 and increase strictly"
            )));
        }
        for i in 0..q.len() - 1 {
            let tail: u64 = m[i + 1..].iter().sum();
            let gap = &q[i + 1] - &q[i];
            let b = r(tail) / (r(m[i]) * &gap);
            let c = r(tail) / (r(m[i + 1]) * &gap);
            let as_int = |v: &Rational, what: &str| {
                rational::to_u64(v).ok_or_else(|| DbrgError::NonIntegralRecovery {
                    what: what.to_string(),
                    side,
                    index: i,
                    value: rational::format(v),
                })
            };
            b_seqs[side.index()].push(as_int(&b, "b")?);
            c_seqs[side.index()].push(as_int(&c, "c")?);
        }
    }
    let [c0, c1] = c_seqs;
    let (k0, k1) = (b_seqs[0][0], b_seqs[1][0]);
    let array = BiregularArray::new(k0, k1, c0, c1)?;
    for side in Side::BOTH {
        for (i, &b) in b_seqs[side.index()].iter().enumerate() {
            if array.b(side, i) != Some(b as i64) {
                return Err(DbrgError::RecoveryInput(format!(
                    "recovered b_{{{side},{i}}} = {b} contradicts the parity rule"
                )));
            }
        }
    }
    Ok(array)
}
