use rayon::prelude::*;

use super::invariants::{ada, pda};
use super::{PeriodicSet, DEFAULT_K};
use crate::error::{GeoError, Result};
use crate::numcore::Exponent;
use crate::rows::{RowMetric, WeightedRowMatrix};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DedupParams {
    pub k: usize,
    /// Pairs whose ADA vectors differ by more than this in some entry are skipped.
    pub ada_threshold: f64,
    /// Pairs are reported when the EMD between their PDAs is at most this.
    pub confirm_threshold: f64,
}

impl Default for DedupParams {
    fn default() -> Self {
        DedupParams { k: DEFAULT_K, ada_threshold: 0.01, confirm_threshold: 0.01 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DedupPair {
    pub id1: String,
    pub id2: String,
    pub ada_linf: f64,
    pub pda_emd: f64,
}

/// Near-duplicate pairs: an ADA filter, which never exceeds the PDA distance, followed by exact EMD confirmation.
pub fn dedup(dataset: &[(String, PeriodicSet)], params: DedupParams) -> Result<Vec<DedupPair>> {
    if dataset.is_empty() {
        return Err(GeoError::Empty("dataset"));
    }
    if !(params.ada_threshold >= 0.0 && params.confirm_threshold >= 0.0) {
        return Err(GeoError::OutOfRange("dedup thresholds must be non-negative".into()));
    }
    let invariants: Vec<(Vec<f64>, WeightedRowMatrix)> = dataset
        .par_iter()
        .map(|(_, s)| Ok((ada(s, params.k)?, pda(s, params.k)?)))
        .collect::<Result<_>>()?;
    let mut candidates = Vec::new();
    for i in 0..dataset.len() {
        for j in i + 1..dataset.len() {
            let gap = Exponent::Infinity.norm(invariants[i].0.iter().zip(&invariants[j].0).map(|(a, b)| a - b));
            if gap <= params.ada_threshold {
                candidates.push((i, j, gap));
            }
        }
    }
    let confirmed: Vec<Option<DedupPair>> = candidates
        .par_iter()
        .map(|&(i, j, gap)| {
            let d = invariants[i].1.emd(&invariants[j].1, RowMetric::Minkowski(Exponent::Infinity))?;
            Ok((d <= params.confirm_threshold).then(|| DedupPair {
                id1: dataset[i].0.clone(),
                id2: dataset[j].0.clone(),
                ada_linf: gap,
                pda_emd: d,
            }))
        })
        .collect::<Result<_>>()?;
    let mut pairs: Vec<DedupPair> = confirmed.into_iter().flatten().collect();
    pairs.sort_by(|a, b| a.pda_emd.total_cmp(&b.pda_emd).then_with(|| a.id1.cmp(&b.id1)).then_with(|| a.id2.cmp(&b.id2)));
    Ok(pairs)
}
