//! Distance-biregular graphs and their double intersection arrays.
//!
//! A bipartite semiregular graph is distance-biregular when, for `x` on stable
//! set `V_ℓ` and `y` at distance `i`, the counts `c_{ℓ,i}` and `b_{ℓ,i}` of
//! neighbors of `y` one step closer to / farther from `x` depend only on `ℓ`
//! and `i`. Everything about the equilibrium measures and the Laplacian group
//! inverse of such a graph is a rational function of its array, which is what
//! this module evaluates.

mod array;
mod closed_form;
mod detect;
mod feasibility;

use thiserror::Error;

pub use array::{derive_counts, BiregularArray, DerivedCounts, Side};
pub use closed_form::{
    cross_relation_check, dbrg_capacity, dbrg_effective_resistance, equilibrium_arrays,
    group_inverse_entry, group_inverse_row, m_property_array, necessary_condition, recover_array,
    DbrgEquilibrium,
};
pub use detect::{detect_dbrg, detect_dbrg_structure, DbrgStructure};
pub use feasibility::{binomial, validate, Condition, Failure, FeasibilityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DbrgError {
    #[error("invalid array: {0}")]
    InvalidArray(String),
    #[error("b_{{{side},{index}}} = {value} must be positive below the diameter")]
    NegativeB { side: Side, index: usize, value: i64 },
    #[error("side {side} does not close: c at the diameter is {found}, parity requires {expected}")]
    ParityViolation { side: Side, expected: u64, found: u64 },
    #[error("k_{{{side},{index}}} = {value} is not an integer")]
    NonIntegralCount { side: Side, index: usize, value: String },
    #[error("ball totals differ: B_(0,D0) = {n0}, B_(1,D1) = {n1}")]
    TotalMismatch { n0: String, n1: String },
    #[error("closed forms disagree for {what}: b-form {b_form}, c-form {c_form}")]
    FormMismatch { what: String, b_form: String, c_form: String },
    #[error("distance {distance} out of range 1..={max} for side {side}")]
    DistanceOutOfRange { side: Side, distance: usize, max: usize },
    #[error("condition needs D0 ≥ 2, got D0 = {0}")]
    DiameterTooSmall(usize),
    #[error("recovered {what}_{{{side},{index}}} = {value} is not an integer")]
    NonIntegralRecovery { what: String, side: Side, index: usize, value: String },
    #[error("bad recovery input: {0}")]
    RecoveryInput(String),
    #[error("M-property inequality differs between sides (side 0: {side0}, side 1: {side1})")]
    SideFormsDisagree { side0: bool, side1: bool },
}
