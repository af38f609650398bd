//! Distributions over base subsets of a cloud: relative distances in any metric space and
//! oriented, strength-weighted variants in R^2 and R^3.

mod oriented;
mod rdd;
mod strength;

use std::str::FromStr;

pub use oriented::{osd, scd, scd_dist, scd_with_centre, BaseKind, OrientedColumn, OrientedDistribution, OrientedSimplexwise};
pub use rdd::{asd, sdd, sdd_dist, sdd_from_distances, sdm, Rdd, Sdd, MAX_ORDER};
pub(crate) use strength::signed_strength;
pub use strength::{
    is_degenerate, lipschitz_constant, squared_volume, strength, strength_from_distances, DEGENERATE_TOL, LAMBDA_2,
    LAMBDA_3,
};

use crate::error::{GeoError, Result};
use crate::numcore::{emd_cost, lac, CostMatrix};

/// How two weighted collections are compared given ground costs between their items.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Comparison {
    /// Linear assignment over the uncollapsed, equally weighted items.
    Lac,
    /// Earth Mover's Distance over collapsed items with multiplicity weights.
    #[default]
    Emd,
}

impl FromStr for Comparison {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lac" => Ok(Comparison::Lac),
            "emd" => Ok(Comparison::Emd),
            other => Err(GeoError::OutOfRange(format!("unknown comparison '{other}'"))),
        }
    }
}

pub(crate) fn compare_weighted<F>(counts_x: &[usize], counts_y: &[usize], mode: Comparison, cost: F) -> Result<f64>
where
    F: Fn(usize, usize) -> Result<f64>,
{
    let mut c = vec![0.0; counts_x.len() * counts_y.len()];
    for i in 0..counts_x.len() {
        for j in 0..counts_y.len() {
            c[i * counts_y.len() + j] = cost(i, j)?;
        }
    }
    let distinct = CostMatrix::new(counts_x.len(), counts_y.len(), c)?;
    let tx: usize = counts_x.iter().sum();
    let ty: usize = counts_y.iter().sum();
    match mode {
        Comparison::Emd => {
            let wx: Vec<f64> = counts_x.iter().map(|&k| k as f64 / tx as f64).collect();
            let wy: Vec<f64> = counts_y.iter().map(|&k| k as f64 / ty as f64).collect();
            emd_cost(&wx, &wy, &distinct)
        }
        Comparison::Lac => {
            if tx != ty {
                return Err(GeoError::DimensionMismatch { expected: tx, found: ty });
            }
            let expand = |counts: &[usize]| -> Vec<usize> {
                counts.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect()
            };
            let (ex, ey) = (expand(counts_x), expand(counts_y));
            let full = CostMatrix::from_fn(tx, ty, |i, j| distinct.get(ex[i], ey[j]))?;
            lac(&full)
        }
    }
}
