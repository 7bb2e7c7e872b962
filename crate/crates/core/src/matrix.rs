//! Dense exact matrices and a Gaussian elimination solver.

use std::ops::Mul;

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{self, Rational};

/// Square matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system is singular (no pivot in column {column})")]
    SingularSystem { column: usize },
    #[error("dimension mismatch: matrix of order {order}, vector of length {len}")]
    DimensionMismatch { order: usize, len: usize },
}

impl RationalMatrix {
    pub fn zeros(order: usize) -> Self {
        RationalMatrix {
            order,
            entries: vec![Rational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from its rows. Returns `None` unless the rows form a square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        Some(RationalMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.order + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.order)
            .map(|j| (0..self.order).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        self.rows()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Off-diagonal entry with the largest value, if any entry is positive.
    pub fn max_positive_off_diagonal(&self) -> Option<(usize, usize, &Rational)> {
        let mut best: Option<(usize, usize, &Rational)> = None;
        for i in 0..self.order {
            for j in 0..self.order {
                let v = self.get(i, j);
                if i != j && v > &Rational::zero() && best.map_or(true, |(_, _, b)| v > b) {
                    best = Some((i, j, v));
                }
            }
        }
        best
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders must match");
        let n = self.order;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Solves `a · x = rhs` exactly by Gaussian elimination.
///
/// The pivot in each column is the first row (in index order) with a nonzero
/// entry; no magnitude-based pivoting is needed in exact arithmetic.
pub fn solve(a: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = a.order();
    if rhs.len() != n {
        return Err(LinalgError::DimensionMismatch { order: n, len: rhs.len() });
    }
    let mut rows: Vec<Vec<Rational>> = a
        .rows()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.to_vec();
            row.push(b.clone());
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(LinalgError::SingularSystem { column: col })?;
        rows.swap(col, pivot);
        let (head, tail) = rows.split_at_mut(col + 1);
        let pivot_row = &head[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for j in col..=n {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    row[j] -= delta;
                }
            }
        }
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rows[i][n].clone();
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                acc -= &rows[i][j] * &x[j];
            }
        }
        x[i] = acc / &rows[i][i];
    }
    Ok(x)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    order: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            order: self.order,
            entries: self
                .rows()
                .map(|r| r.iter().map(rational::format).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let rows = raw
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| rational::parse(t).map_err(de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = RationalMatrix::from_rows(rows)
            .ok_or_else(|| de::Error::custom("matrix entries are not square"))?;
        if m.order != raw.order {
            return Err(de::Error::custom(format!(
                "declared order {} but entries have order {}",
                raw.order, m.order
            )));
        }
        Ok(m)
    }
}
