//! Equilibrium measures, capacities and the Laplacian group inverse.
//!
//! For a base vertex `y` the equilibrium measure `ν^y` is the unique function
//! with `ν^y(y) = 0` and `L(ν^y) = 1 - n·ε_y`. It is obtained by grounding `y`
//! (deleting its row and column from `L`) and solving the remaining strictly
//! diagonally dominant system exactly. The group inverse is assembled from the
//! `n` equilibrium measures via `L#(x,y) = (cap(y) - n·ν^y(x)) / n²`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{self, LinalgError, RationalMatrix};
use crate::network::{laplacian, DistanceTable, Network};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("equilibrium system is singular: {0}")]
    SingularSystem(#[from] LinalgError),
    #[error("effective resistance needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error(
        "equilibrium value at vertex #{vertex} sits on level {level} but the vertex is at distance {distance}"
    )]
    DepthViolation {
        vertex: usize,
        level: usize,
        distance: usize,
    },
    #[error("levels 0..={level} hold {count} vertices, more than the ball size {ball}")]
    BallViolation { level: usize, count: usize, ball: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumMeasure {
    #[serde(rename = "base_vertex")]
    pub base_id: String,
    #[serde(skip)]
    pub base: usize,
    /// `ν^y(x)` in network index order.
    #[serde(with = "rational::serde_vec")]
    pub values: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub capacity: Rational,
}

/// Distinct values of an equilibrium measure with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumArray {
    #[serde(rename = "base_vertex")]
    pub base_id: String,
    #[serde(skip)]
    pub base: usize,
    /// `0 = q_0 < q_1 < ... < q_ℓ`
    #[serde(with = "rational::serde_vec")]
    pub levels: Vec<Rational>,
    pub multiplicities: Vec<usize>,
}

impl EquilibriumArray {
    /// ℓ(y), the number of distinct positive values.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Which test produced an [`MReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MTest {
    /// `cap(y) ≤ n·ν^y(x)` for all adjacent `x, y`.
    MinimumPrinciple,
    /// Sign of every off-diagonal entry of `L#`.
    GroupInverseSign,
    /// Level form over equilibrium arrays.
    EquilibriumArray,
    /// Closed-form inequality over a double intersection array.
    IntersectionArray,
    /// Parameter inequality for a bipartite distance-regular graph of diameter 3.
    BipartiteDiameterThree,
    /// Parameter inequality for quasi-symmetric design incidence graphs.
    QuasiSymmetricDesign,
}

/// Where an M-property test failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `cap(y) > n·ν^y(x)` for the neighbor `x` of `y`.
    Capacity {
        base: String,
        neighbor: String,
        #[serde(with = "rational::serde_str")]
        capacity: Rational,
        #[serde(with = "rational::serde_str")]
        scaled_measure: Rational,
    },
    /// `L#(row, col) > 0` off the diagonal.
    PositiveEntry {
        row: String,
        col: String,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    /// An inequality `lhs ≤ rhs` that does not hold.
    Inequality {
        subject: String,
        #[serde(with = "rational::serde_str")]
        lhs: Rational,
        #[serde(with = "rational::serde_str")]
        rhs: Rational,
    },
}

/// Verdict of an M-property test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub method: MTest,
}

impl MReport {
    pub fn pass(method: MTest) -> Self {
        MReport {
            verdict: true,
            witness: None,
            method,
        }
    }

    pub fn fail(method: MTest, witness: Witness) -> Self {
        MReport {
            verdict: false,
            witness: Some(witness),
            method,
        }
    }
}

fn order_rational(net: &Network) -> Rational {
    rational::from_u64(net.order() as u64)
}

/// Solves `L(ν) = 1 - n·ε_y`, `ν(y) = 0` by grounding `y`.
pub fn solve_equilibrium(net: &Network, y: usize) -> Result<EquilibriumMeasure, PotentialError> {
    let n = net.order();
    let lap = laplacian(net);
    let keep: Vec<usize> = (0..n).filter(|&v| v != y).collect();
    let reduced = RationalMatrix::from_rows(
        keep.iter()
            .map(|&r| keep.iter().map(|&c| lap.get(r, c).clone()).collect())
            .collect(),
    )
    .expect("reduced Laplacian is square");
    let rhs = vec![Rational::one(); n - 1];
    let solution = matrix::solve(&reduced, &rhs)?;

    let mut values = vec![Rational::zero(); n];
    for (v, value) in keep.into_iter().zip(solution) {
        values[v] = value;
    }
    let capacity = values.iter().sum();
    Ok(EquilibriumMeasure {
        base_id: net.id(y).to_string(),
        base: y,
        values,
        capacity,
    })
}

/// Equilibrium measures for every base vertex, in index order.
pub fn all_equilibria(net: &Network) -> Result<Vec<EquilibriumMeasure>, PotentialError> {
    (0..net.order())
        .into_par_iter()
        .map(|y| solve_equilibrium(net, y))
        .collect()
}

/// Groups the values of `m` into levels and checks the depth property
/// `ν^y(x) = q_i ⇒ d(x,y) ≤ i` and `Σ_{j≤i} m_j ≤ B_i(y)`.
pub fn equilibrium_array(
    m: &EquilibriumMeasure,
    dist: &DistanceTable,
) -> Result<EquilibriumArray, PotentialError> {
    let mut levels: Vec<Rational> = m.values.clone();
    levels.sort();
    levels.dedup();
    let multiplicities: Vec<usize> = levels
        .iter()
        .map(|q| m.values.iter().filter(|v| *v == q).count())
        .collect();

    for (x, value) in m.values.iter().enumerate() {
        let level = levels.binary_search(value).expect("value is one of the levels");
        let distance = dist.get(x, m.base);
        if distance > level {
            return Err(PotentialError::DepthViolation {
                vertex: x,
                level,
                distance,
            });
        }
    }
    let mut count = 0;
    for (level, mult) in multiplicities.iter().enumerate() {
        count += mult;
        let ball = dist.ball_size(m.base, level);
        if count > ball {
            return Err(PotentialError::BallViolation { level, count, ball });
        }
    }
    Ok(EquilibriumArray {
        base_id: m.base_id.clone(),
        base: m.base,
        levels,
        multiplicities,
    })
}

/// `L#` from precomputed equilibrium measures (one per vertex, index order).
pub fn green_from_measures(measures: &[EquilibriumMeasure]) -> RationalMatrix {
    let n = measures.len();
    let n_r = rational::from_u64(n as u64);
    let n_sq = &n_r * &n_r;
    let mut g = RationalMatrix::zeros(n);
    for (y, m) in measures.iter().enumerate() {
        for x in 0..n {
            g.set(x, y, (&m.capacity - &n_r * &m.values[x]) / &n_sq);
        }
    }
    g
}

/// A failed group-inverse identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IdentityViolation {
    #[error("L·L#·L ≠ L")]
    Reflexive,
    #[error("L#·L·L# ≠ L#")]
    AntiReflexive,
    #[error("L·L# ≠ L#·L")]
    NotCommuting,
    #[error("L#·1 ≠ 0")]
    ConstantsNotAnnihilated,
    #[error("L# is not symmetric")]
    Asymmetric,
}

/// Checks the defining identities of the group inverse exactly.
pub fn check_group_inverse(l: &RationalMatrix, g: &RationalMatrix) -> Result<(), IdentityViolation> {
    let lg = l * g;
    let gl = g * l;
    if &lg * l != *l {
        return Err(IdentityViolation::Reflexive);
    }
    if &gl * g != *g {
        return Err(IdentityViolation::AntiReflexive);
    }
    if lg != gl {
        return Err(IdentityViolation::NotCommuting);
    }
    if g.row_sums().iter().any(|s| !s.is_zero()) {
        return Err(IdentityViolation::ConstantsNotAnnihilated);
    }
    if !g.is_symmetric() {
        return Err(IdentityViolation::Asymmetric);
    }
    Ok(())
}

/// Dense exact group inverse of the Laplacian, with its equilibrium measures.
///
/// Panics if the assembled matrix fails a group-inverse identity, which
/// would mean the solver is wrong.
pub fn group_inverse_with_measures(net: &Network) -> (RationalMatrix, Vec<EquilibriumMeasure>) {
    let measures = all_equilibria(net).expect("grounded Laplacian of a connected network is nonsingular");
    let g = green_from_measures(&measures);
    if let Err(violation) = check_group_inverse(&laplacian(net), &g) {
        panic!("group inverse assembly is inconsistent: {violation}");
    }
    (g, measures)
}

pub fn group_inverse(net: &Network) -> RationalMatrix {
    group_inverse_with_measures(net).0
}

/// `R(x,y) = (ν^x(y) + ν^y(x)) / n`.
pub fn effective_resistance(net: &Network, x: usize, y: usize) -> Result<Rational, PotentialError> {
    if x == y {
        return Err(PotentialError::SameVertex(net.id(x).to_string()));
    }
    let nx = solve_equilibrium(net, x)?;
    let ny = solve_equilibrium(net, y)?;
    Ok((&nx.values[y] + &ny.values[x]) / order_rational(net))
}

fn minimum_principle_report(net: &Network, measures: &[EquilibriumMeasure]) -> MReport {
    let n_r = order_rational(net);
    for (y, m) in measures.iter().enumerate() {
        for x in net.neighbors(y) {
            let scaled = &n_r * &m.values[x];
            if m.capacity > scaled {
                return MReport::fail(
                    MTest::MinimumPrinciple,
                    Witness::Capacity {
                        base: net.id(y).to_string(),
                        neighbor: net.id(x).to_string(),
                        capacity: m.capacity.clone(),
                        scaled_measure: scaled,
                    },
                );
            }
        }
    }
    MReport::pass(MTest::MinimumPrinciple)
}

/// Sign test on the off-diagonal entries of `L#`.
pub fn m_property_by_sign(net: &Network, g: &RationalMatrix) -> MReport {
    for x in 0..g.order() {
        for y in 0..g.order() {
            if x != y && g.get(x, y) > &Rational::zero() {
                return MReport::fail(
                    MTest::GroupInverseSign,
                    Witness::PositiveEntry {
                        row: net.id(x).to_string(),
                        col: net.id(y).to_string(),
                        value: g.get(x, y).clone(),
                    },
                );
            }
        }
    }
    MReport::pass(MTest::GroupInverseSign)
}

/// M-property of a general network through the minimum principle, cross-checked
/// against the entrywise sign of `L#`.
///
/// Panics if the two verdicts differ.
pub fn m_property_general(net: &Network) -> MReport {
    let (g, measures) = group_inverse_with_measures(net);
    let by_capacity = minimum_principle_report(net, &measures);
    let by_sign = m_property_by_sign(net, &g);
    assert_eq!(
        by_capacity.verdict, by_sign.verdict,
        "minimum-principle and sign tests disagree"
    );
    by_capacity
}

/// Level criterion `Σ_{i≥2} m_i (q_i - q_1) ≤ q_1` for every base vertex.
///
/// This is a sufficient condition for the M-property; `arrays` should cover
/// every vertex of the network.
pub fn sufficient_m_test(arrays: &[EquilibriumArray]) -> MReport {
    for a in arrays {
        if a.length() < 2 {
            continue;
        }
        let q1 = &a.levels[1];
        let lhs: Rational = a.levels[2..]
            .iter()
            .zip(&a.multiplicities[2..])
            .map(|(q, m)| rational::from_u64(*m as u64) * (q - q1))
            .sum();
        if &lhs > q1 {
            return MReport::fail(
                MTest::EquilibriumArray,
                Witness::Inequality {
                    subject: a.base_id.clone(),
                    lhs,
                    rhs: q1.clone(),
                },
            );
        }
    }
    MReport::pass(MTest::EquilibriumArray)
}
