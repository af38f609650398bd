//! Unordered weighted rows of ordered distances, the common carrier of PDD-like invariants.

use std::cmp::Ordering;

use crate::error::{GeoError, Result};
use crate::numcore::{emd_cost, minkowski_unchecked, CostMatrix, Exponent, WEIGHT_SUM_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedRow {
    pub weight: f64,
    pub values: Vec<f64>,
}

/// Weighted rows stored in lexicographic order with near-equal rows merged.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedRowMatrix {
    k: usize,
    rows: Vec<WeightedRow>,
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

fn within(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Ground metric between two rows of equal length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RowMetric {
    Minkowski(Exponent),
    /// Euclidean distance divided by the square root of the row length.
    RootMeanSquare,
}

impl Default for RowMetric {
    fn default() -> Self {
        RowMetric::Minkowski(Exponent::Infinity)
    }
}

impl RowMetric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            RowMetric::Minkowski(q) => minkowski_unchecked(a, b, q),
            RowMetric::RootMeanSquare => {
                minkowski_unchecked(a, b, Exponent::TWO) / (a.len().max(1) as f64).sqrt()
            }
        }
    }
}

impl WeightedRowMatrix {
    /// Builds a canonical matrix, merging rows equal within `collapse_tol` in every entry.
    pub fn new(k: usize, rows: Vec<WeightedRow>, collapse_tol: f64) -> Result<Self> {
        if rows.is_empty() {
            return Err(GeoError::Empty("weighted rows"));
        }
        if !(collapse_tol >= 0.0) {
            return Err(GeoError::OutOfRange(format!("collapse tolerance {collapse_tol} must be non-negative")));
        }
        let mut total = 0.0;
        for row in &rows {
            if row.values.len() != k {
                return Err(GeoError::DimensionMismatch { expected: k, found: row.values.len() });
            }
            if !row.weight.is_finite() || row.weight <= 0.0 {
                return Err(GeoError::InvalidWeight(row.weight));
            }
            if row.values.iter().any(|x| !x.is_finite()) {
                return Err(GeoError::NonFinite);
            }
            total += row.weight;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(GeoError::WeightSum(total));
        }
        let mut rows = rows;
        rows.sort_by(|a, b| lex(&a.values, &b.values));
        let mut merged: Vec<WeightedRow> = Vec::with_capacity(rows.len());
        for row in rows {
            match merged.last_mut() {
                Some(last) if within(&last.values, &row.values, collapse_tol) => last.weight += row.weight,
                _ => merged.push(row),
            }
        }
        for row in &mut merged {
            row.weight /= total;
        }
        Ok(WeightedRowMatrix { k, rows: merged })
    }

    /// Rows of equal weight `1/len`, merged when bit-equal.
    pub fn uniform(k: usize, rows: Vec<Vec<f64>>, collapse_tol: f64) -> Result<Self> {
        let w = 1.0 / rows.len().max(1) as f64;
        let rows = rows.into_iter().map(|values| WeightedRow { weight: w, values }).collect();
        WeightedRowMatrix::new(k, rows, collapse_tol)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[WeightedRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.weight).collect()
    }

    /// Weighted average of every column.
    pub fn column_means(&self) -> Vec<f64> {
        (0..self.k)
            .map(|j| self.rows.iter().map(|r| r.weight * r.values[j]).sum())
            .collect()
    }

    /// Applies `f(column, value)` to every entry, keeping weights.
    pub fn map_columns<F: Fn(usize, f64) -> f64>(&self, f: F) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| WeightedRow {
                weight: r.weight,
                values: r.values.iter().enumerate().map(|(j, &x)| f(j, x)).collect(),
            })
            .collect();
        WeightedRowMatrix::new(self.k, rows, 0.0)
    }

    /// Keeps only the first `k` columns.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.k {
            return Err(GeoError::OutOfRange(format!("cannot truncate {} columns to {k}", self.k)));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| WeightedRow { weight: r.weight, values: r.values[..k].to_vec() })
            .collect();
        WeightedRowMatrix::new(k, rows, 0.0)
    }

    /// Earth Mover's Distance between row distributions under a row ground metric.
    pub fn emd(&self, other: &WeightedRowMatrix, metric: RowMetric) -> Result<f64> {
        if self.k != other.k {
            return Err(GeoError::DimensionMismatch { expected: self.k, found: other.k });
        }
        if let RowMetric::Minkowski(q) = metric {
            q.validate()?;
        }
        let costs = CostMatrix::from_fn(self.len(), other.len(), |i, j| {
            metric.distance(&self.rows[i].values, &other.rows[j].values)
        })?;
        emd_cost(&self.weights(), &other.weights(), &costs)
    }
}
