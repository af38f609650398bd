use super::cost::CostMatrix;
use super::norm::{minkowski_unchecked, Exponent};
use crate::error::{GeoError, Result};

/// Bottleneck distance between two finite sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bottleneck {
    Finite(f64),
    /// The sets have different sizes, so no bijection exists.
    Infinite,
}

impl Bottleneck {
    pub fn value(self) -> f64 {
        match self {
            Bottleneck::Finite(d) => d,
            Bottleneck::Infinite => f64::INFINITY,
        }
    }
}

fn check_points<P: AsRef<[f64]>>(a: &[P], b: &[P]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(GeoError::Empty("point set"));
    }
    let dim = a[0].as_ref().len();
    for p in a.iter().chain(b) {
        let p = p.as_ref();
        if p.len() != dim {
            return Err(GeoError::DimensionMismatch { expected: dim, found: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
    }
    Ok(())
}

/// Hausdorff distance under the Minkowski ground metric `q`.
pub fn hausdorff<P: AsRef<[f64]>>(a: &[P], b: &[P], q: Exponent) -> Result<f64> {
    check_points(a, b)?;
    let q = q.validate()?;
    let directed = |x: &[P], y: &[P]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|r| minkowski_unchecked(p.as_ref(), r.as_ref(), q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Bottleneck distance under the Minkowski ground metric `q`.
pub fn bottleneck<P: AsRef<[f64]>>(a: &[P], b: &[P], q: Exponent) -> Result<Bottleneck> {
    check_points(a, b)?;
    let q = q.validate()?;
    if a.len() != b.len() {
        return Ok(Bottleneck::Infinite);
    }
    let costs = CostMatrix::from_fn(a.len(), b.len(), |i, j| {
        minkowski_unchecked(a[i].as_ref(), b[j].as_ref(), q)
    })?;
    bottleneck_cost(&costs).map(Bottleneck::Finite)
}

/// Minimum over bijections of the maximum matched cost in a square matrix.
pub fn bottleneck_cost(costs: &CostMatrix) -> Result<f64> {
    if !costs.is_square() {
        return Err(GeoError::NotSquare { rows: costs.rows(), cols: costs.cols() });
    }
    let mut candidates = costs.as_slice().to_vec();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // Every row needs some edge, so the answer is at least the largest row minimum (same for columns).
    let n = costs.rows();
    let row_floor = (0..n)
        .map(|i| (0..n).map(|j| costs.get(i, j)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let col_floor = (0..n)
        .map(|j| (0..n).map(|i| costs.get(i, j)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let floor = row_floor.max(col_floor);
    let mut lo = candidates.partition_point(|&c| c < floor);
    let mut hi = candidates.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if has_perfect_matching(costs, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

fn has_perfect_matching(costs: &CostMatrix, threshold: f64) -> bool {
    let n = costs.rows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| costs.get(i, j) <= threshold).collect())
        .collect();
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut visited = vec![false; n];
        if !augment(i, &adj, &mut match_col, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    row: usize,
    adj: &[Vec<usize>],
    match_col: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &j in &adj[row] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match match_col[j] {
            None => true,
            Some(other) => augment(other, adj, match_col, visited),
        };
        if free {
            match_col[j] = Some(row);
            return true;
        }
    }
    false
}
