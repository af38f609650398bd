use super::{unit_ball_volume, PeriodicSet};
use crate::error::{GeoError, Result};
use crate::numcore::Exponent;
use crate::rows::{RowMetric, WeightedRowMatrix};

/// Pointwise Distance Distribution of a periodic set: one row of `k` neighbour distances per motif point.
pub fn pdd_periodic(set: &PeriodicSet, k: usize, collapse_tol: f64) -> Result<WeightedRowMatrix> {
    WeightedRowMatrix::uniform(k, set.neighbours(k)?, collapse_tol)
}

/// Average Minimum Distance: the weighted column means of the PDD.
pub fn amd(set: &PeriodicSet, k: usize) -> Result<Vec<f64>> {
    Ok(pdd_periodic(set, k, 0.0)?.column_means())
}

/// Point packing coefficient `(vol / (m V_l))^(1/l)`.
pub fn ppc(set: &PeriodicSet) -> f64 {
    let l = set.rank();
    (set.cell_volume() / (set.motif_size() as f64 * unit_ball_volume(l))).powf(1.0 / l as f64)
}

/// Deviations of AMD and PDD from their asymptotic growth `PPC * j^(1/l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deviations {
    pub ada: Vec<f64>,
    pub pda: WeightedRowMatrix,
    /// AMD divided by the asymptotic growth.
    pub and: Vec<f64>,
    /// PDD divided by the asymptotic growth.
    pub pnd: WeightedRowMatrix,
}

fn growth(set: &PeriodicSet, j: usize) -> f64 {
    ppc(set) * (j as f64).powf(1.0 / set.rank() as f64)
}

pub fn deviations(set: &PeriodicSet, k: usize) -> Result<Deviations> {
    let pdd = pdd_periodic(set, k, 0.0)?;
    let means = pdd.column_means();
    let g: Vec<f64> = (1..=k).map(|j| growth(set, j)).collect();
    Ok(Deviations {
        ada: means.iter().zip(&g).map(|(a, b)| a - b).collect(),
        pda: pdd.map_columns(|j, x| x - g[j])?,
        and: means.iter().zip(&g).map(|(a, b)| a / b).collect(),
        pnd: pdd.map_columns(|j, x| x / g[j])?,
    })
}

pub fn ada(set: &PeriodicSet, k: usize) -> Result<Vec<f64>> {
    let means = amd(set, k)?;
    Ok(means.iter().enumerate().map(|(j, a)| a - growth(set, j + 1)).collect())
}

pub fn pda(set: &PeriodicSet, k: usize) -> Result<WeightedRowMatrix> {
    let pdd = pdd_periodic(set, k, 0.0)?;
    pdd.map_columns(|j, x| x - growth(set, j + 1))
}

/// Earth Mover's Distance between the PDAs of two sets under the `L_q` row metric.
pub fn pda_dist(a: &PeriodicSet, b: &PeriodicSet, k: usize, q: Exponent) -> Result<f64> {
    pda(a, k)?.emd(&pda(b, k)?, RowMetric::Minkowski(q))
}

/// Distance to the nearest neighbour in a dataset together with its identifier.
pub fn lnd<'a>(set: &PeriodicSet, dataset: &'a [(String, PeriodicSet)], k: usize, q: Exponent) -> Result<(f64, &'a str)> {
    if dataset.is_empty() {
        return Err(GeoError::Empty("dataset"));
    }
    let own = pda(set, k)?;
    let mut best: Option<(f64, &str)> = None;
    for (id, other) in dataset {
        let d = own.emd(&pda(other, k)?, RowMetric::Minkowski(q))?;
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, id.as_str()));
        }
    }
    Ok(best.expect("non-empty dataset"))
}
