use super::cost::CostMatrix;
use crate::error::{GeoError, Result};

/// Optimal assignment of a square cost matrix: `assignment[i]` is the column matched to row `i`.
pub fn min_assignment(costs: &CostMatrix) -> Result<(f64, Vec<usize>)> {
    if !costs.is_square() {
        return Err(GeoError::NotSquare { rows: costs.rows(), cols: costs.cols() });
    }
    let n = costs.rows();
    // Shortest augmenting paths with row/column potentials, 1-based with a sentinel column 0.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().map(|(i, &j)| costs.get(i, j)).sum();
    Ok((total, assignment))
}

/// Linear Assignment Cost: the minimum total assignment cost divided by the matrix size.
pub fn lac(costs: &CostMatrix) -> Result<f64> {
    let (total, _) = min_assignment(costs)?;
    Ok(total / costs.rows() as f64)
}
