//! Nonnegative factors M = VVᵀ and the constructions that produce them.

mod continuation;
mod cp3;
mod dd;
mod heuristic;
mod horn6;
mod perturb;

pub use continuation::{factor_continuation, Continuation};
pub use cp3::cp3_factorize;
pub use dd::{dd_factorize, positive_dd_factorize};
pub use heuristic::{heuristic_min_factor, HeuristicOptions, HeuristicOutcome};
pub use horn6::{horn_generator_matrix, horn_generators, horn_orthogonal_factorize, HornFactorization};
pub use perturb::{perturb_positify, Positified};

use serde::Serialize;
use thiserror::Error;

use crate::numkern::{Mat, NumError, SymMat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("matrix is not diagonally dominant: row {row} short by {deficit:e}")]
    NotDd { row: usize, deficit: f64 },
    #[error("matrix has a negative entry {value:e} at ({i}, {j})")]
    NotNonneg { i: usize, j: usize, value: f64 },
    #[error("order {n} is too small, need n >= {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("matrix is not entrywise positive (min entry {min_entry:e})")]
    NotPositive { min_entry: f64 },
    #[error("matrix is not doubly nonnegative")]
    NotDnn,
    #[error("Perron vector is not strictly positive (min coordinate {min_coord:e})")]
    PerronNotPositive { min_coord: f64 },
    #[error("factor is not orthogonal to the Horn block: <VV^T, H+0> = {inner:e}")]
    NotOrthogonalToHorn { inner: f64 },
    #[error("column {column} lies in none of the five Horn generator cones")]
    ColumnOutsideCones { column: usize },
    #[error("k = {k} out of range 1..={p}")]
    KOutOfRange { k: usize, p: usize },
    #[error("Newton iteration diverged at step {iteration} (residual {residual:e})")]
    NewtonDiverged { iteration: usize, residual: f64 },
    #[error("positivity lost: entry ({i}, {j}) = {value:e}")]
    PositivityLost { i: usize, j: usize, value: f64 },
    #[error("factor has a negative entry {value:e} at ({row}, {column})")]
    NegativeFactorEntry { row: usize, column: usize, value: f64 },
    #[error("interior certificate could not be established")]
    InteriorNotCertified,
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Numerical(#[from] NumError),
}

impl FactorError {
    pub fn tag(&self) -> &'static str {
        match self {
            FactorError::NotDd { .. } => "NOT_DD",
            FactorError::NotNonneg { .. } => "NOT_NONNEG",
            FactorError::OrderTooSmall { .. } => "ORDER_TOO_SMALL",
            FactorError::NotPositive { .. } => "NOT_POSITIVE",
            FactorError::NotDnn => "NOT_DNN",
            FactorError::PerronNotPositive { .. } => "PERRON_NOT_POSITIVE",
            FactorError::NotOrthogonalToHorn { .. } => "NOT_ORTHOGONAL_TO_HORN",
            FactorError::ColumnOutsideCones { .. } => "COLUMN_OUTSIDE_CONES",
            FactorError::KOutOfRange { .. } => "K_OUT_OF_RANGE",
            FactorError::NewtonDiverged { .. } => "NEWTON_DIVERGED",
            FactorError::PositivityLost { .. } => "POSITIVITY_LOST",
            FactorError::NegativeFactorEntry { .. } => "NEGATIVE_FACTOR_ENTRY",
            FactorError::InteriorNotCertified => "INTERIOR_NOT_CERTIFIED",
            FactorError::Shape(_) => "SHAPE",
            FactorError::Numerical(e) => e.tag(),
        }
    }
}

/// Entrywise nonnegative n×p factor V, stored by columns. Zero columns are
/// dropped on construction, so `p()` counts rank-one terms v vᵀ ≠ 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegFactor {
    n: usize,
    columns: Vec<Vec<f64>>,
}

impl NonnegFactor {
    /// Rejects any negative entry.
    pub fn new(n: usize, columns: Vec<Vec<f64>>) -> Result<Self, FactorError> {
        Self::clamped(n, columns, 0.0)
    }

    /// Entries in [-clamp, 0) are set to zero; anything more negative is an
    /// error.
    pub fn clamped(n: usize, columns: Vec<Vec<f64>>, clamp: f64) -> Result<Self, FactorError> {
        let mut kept = Vec::with_capacity(columns.len());
        for (j, mut c) in columns.into_iter().enumerate() {
            if c.len() != n {
                return Err(FactorError::Shape(format!(
                    "column {j} has length {}, expected {n}",
                    c.len()
                )));
            }
            for (i, v) in c.iter_mut().enumerate() {
                if !v.is_finite() {
                    return Err(NumError::NonFinite.into());
                }
                if *v < 0.0 {
                    if *v >= -clamp {
                        *v = 0.0;
                    } else {
                        return Err(FactorError::NegativeFactorEntry {
                            row: i,
                            column: j,
                            value: *v,
                        });
                    }
                }
            }
            if c.iter().any(|v| *v > 0.0) {
                kept.push(c);
            }
        }
        Ok(NonnegFactor { n, columns: kept })
    }

    pub fn from_mat(v: &Mat) -> Result<Self, FactorError> {
        Self::new(v.rows(), v.columns())
    }

    pub fn empty(n: usize) -> Self {
        NonnegFactor { n, columns: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        NonnegFactor { n, columns: cols }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns.
    #[inline]
    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_columns(self.n, &self.columns)
    }

    /// V Vᵀ.
    pub fn product(&self) -> SymMat {
        let mut m = SymMat::zeros(self.n);
        for c in &self.columns {
            for i in 0..self.n {
                if c[i] == 0.0 {
                    continue;
                }
                for j in i..self.n {
                    m.set(i, j, m.get(i, j) + c[i] * c[j]);
                }
            }
        }
        m
    }

    /// max_ij |(VVᵀ - M)_ij|.
    pub fn residual(&self, m: &SymMat) -> f64 {
        self.product().max_abs_diff(m)
    }

    pub fn max_entry(&self) -> f64 {
        self.columns
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0f64, |m, v| m.max(*v))
    }

    pub fn min_entry(&self) -> f64 {
        self.columns
            .iter()
            .flat_map(|c| c.iter())
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// [V | W].
    pub fn concat(&self, other: &NonnegFactor) -> NonnegFactor {
        assert_eq!(self.n, other.n, "order mismatch");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        NonnegFactor { n: self.n, columns }
    }

    /// Splits off the columns whose i-th coordinate is positive.
    ///
    /// Returns (V1, V2): every column of V1 has i in its support, every
    /// column of V2 has a zero i-th coordinate, and V1V1ᵀ + V2V2ᵀ = VVᵀ.
    pub fn support_split(&self, i: usize) -> (NonnegFactor, NonnegFactor) {
        assert!(i < self.n, "index out of range");
        let (with, without): (Vec<_>, Vec<_>) = self.columns.iter().cloned().partition(|c| c[i] > 0.0);
        (
            NonnegFactor {
                n: self.n,
                columns: with,
            },
            NonnegFactor {
                n: self.n,
                columns: without,
            },
        )
    }

    /// First k columns.
    pub fn truncate(&self, k: usize) -> Result<NonnegFactor, FactorError> {
        if k == 0 || k > self.p() {
            return Err(FactorError::KOutOfRange { k, p: self.p() });
        }
        Ok(NonnegFactor {
            n: self.n,
            columns: self.columns[..k].to_vec(),
        })
    }

    /// Splits columns v ↦ (v/√2, v/√2), largest first, until there are
    /// `target` columns. The product is unchanged.
    pub fn split_to(&self, target: usize) -> NonnegFactor {
        let mut cols = self.columns.clone();
        if cols.is_empty() {
            return self.clone();
        }
        while cols.len() < target {
            let (j, _) = cols
                .iter()
                .enumerate()
                .map(|(j, c)| (j, c.iter().map(|v| v * v).sum::<f64>()))
                .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
            let half: Vec<f64> = cols[j].iter().map(|v| v / std::f64::consts::SQRT_2).collect();
            cols[j] = half.clone();
            cols.push(half);
        }
        NonnegFactor {
            n: self.n,
            columns: cols,
        }
    }
}

/// Free-function form of [`NonnegFactor::support_split`].
pub fn support_split(v: &NonnegFactor, i: usize) -> (NonnegFactor, NonnegFactor) {
    v.support_split(i)
}

/// Free-function form of [`NonnegFactor::truncate`].
pub fn truncate_factor(v: &NonnegFactor, k: usize) -> Result<NonnegFactor, FactorError> {
    v.truncate(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[f64]) -> Vec<f64> {
        v.to_vec()
    }

    #[test]
    fn zero_columns_dropped() {
        let f = NonnegFactor::new(2, vec![col(&[0.0, 0.0]), col(&[1.0, 0.0])]).unwrap();
        assert_eq!(f.p(), 1);
        assert!(NonnegFactor::new(2, vec![col(&[-1.0, 0.0])]).is_err());
        let c = NonnegFactor::clamped(2, vec![col(&[-1e-15, 1.0])], 1e-12).unwrap();
        assert_eq!(c.column(0), &[0.0, 1.0]);
    }

    #[test]
    fn split_identity() {
        let (a, b) = NonnegFactor::identity(3).support_split(0);
        assert_eq!(a.columns(), &[col(&[1.0, 0.0, 0.0])]);
        assert_eq!(b.columns(), &[col(&[0.0, 1.0, 0.0]), col(&[0.0, 0.0, 1.0])]);
    }

    #[test]
    fn split_all_in_support() {
        let v = NonnegFactor::new(3, vec![col(&[1.0, 1.0, 0.0]), col(&[0.0, 1.0, 1.0])]).unwrap();
        let (a, b) = v.support_split(1);
        assert_eq!(a.p(), 2);
        assert_eq!(b.p(), 0);
    }

    #[test]
    fn split_zero_entry_structure() {
        // M_{0,3} = 0: columns through index 0 avoid index 3
        let v = NonnegFactor::new(
            4,
            vec![
                col(&[1.0, 2.0, 0.0, 0.0]),
                col(&[0.5, 0.0, 1.0, 0.0]),
                col(&[0.0, 1.0, 1.0, 2.0]),
                col(&[0.0, 0.0, 3.0, 1.0]),
            ],
        )
        .unwrap();
        let m = v.product();
        assert_eq!(m.get(0, 3), 0.0);
        let (v1, v2) = v.support_split(0);
        let m1 = v1.product();
        let m2 = v2.product();
        for k in 0..4 {
            assert_eq!(m1.get(3, k), 0.0);
            assert_eq!(m2.get(0, k), 0.0);
        }
        assert!(m1.add(&m2).max_abs_diff(&m) == 0.0);
    }

    #[test]
    fn truncate_range() {
        let v = NonnegFactor::identity(3);
        assert_eq!(v.truncate(2).unwrap().p(), 2);
        assert_eq!(v.truncate(3).unwrap(), v);
        assert_eq!(v.truncate(0), Err(FactorError::KOutOfRange { k: 0, p: 3 }));
        assert_eq!(v.truncate(4), Err(FactorError::KOutOfRange { k: 4, p: 3 }));
    }

    #[test]
    fn split_to_preserves_product() {
        let v = NonnegFactor::new(2, vec![col(&[1.0, 2.0])]).unwrap();
        let s = v.split_to(4);
        assert_eq!(s.p(), 4);
        assert!(s.residual(&v.product()) < 1e-14);
    }
}
