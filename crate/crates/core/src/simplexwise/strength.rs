use crate::error::{GeoError, Result};
use crate::numcore::euclid;
use crate::util::det;

/// Lipschitz constant of the strength of a triangle.
pub const LAMBDA_2: f64 = 3.464_101_615_137_754_6;
/// Approximate Lipschitz constant of the strength of a tetrahedron.
pub const LAMBDA_3: f64 = 0.43;

/// Relative threshold below which a squared volume counts as zero.
pub const DEGENERATE_TOL: f64 = 1e-18;

/// Lipschitz constant of strength for simplices in R^n.
pub fn lipschitz_constant(n: usize) -> Result<f64> {
    match n {
        1 => Ok(2.0),
        2 => Ok(LAMBDA_2),
        3 => Ok(LAMBDA_3),
        _ => Err(GeoError::Unsupported(format!("strength constant for dimension {n}"))),
    }
}

/// Squared volume of the simplex with the given `(n+1) x (n+1)` distance matrix (Cayley-Menger).
pub fn squared_volume(dist: &[Vec<f64>]) -> f64 {
    let k = dist.len();
    if k < 2 {
        return 0.0;
    }
    let n = k - 1;
    let mut b = vec![vec![1.0; k + 1]; k + 1];
    b[0][0] = 0.0;
    for i in 0..k {
        for j in 0..k {
            b[i + 1][j + 1] = dist[i][j] * dist[i][j];
        }
    }
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
    (sign * det(&b) / (2f64.powi(n as i32) * fact * fact)).max(0.0)
}

/// Whether a squared volume is negligible relative to the largest edge of its simplex.
fn negligible(volume_sq: f64, dist: &[Vec<f64>]) -> bool {
    let n = dist.len().saturating_sub(1);
    let max_d = dist.iter().flatten().copied().fold(0.0, f64::max);
    max_d == 0.0 || volume_sq < DEGENERATE_TOL * max_d.powi(2 * n as i32)
}

/// Whether the simplex with this distance matrix has negligible volume.
pub fn is_degenerate(dist: &[Vec<f64>]) -> bool {
    negligible(squared_volume(dist), dist)
}

fn strength_with_volume(volume_sq: f64, dist: &[Vec<f64>]) -> f64 {
    let k = dist.len();
    if k < 2 || negligible(volume_sq, dist) {
        return 0.0;
    }
    let n = k - 1;
    let mut half_sum = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            half_sum += dist[i][j];
        }
    }
    half_sum /= 2.0;
    volume_sq / half_sum.powi(2 * n as i32 - 1)
}

/// Strength `V^2 / p^(2n-1)` from a distance matrix, where `p` is half the sum of edge lengths.
pub fn strength_from_distances(dist: &[Vec<f64>]) -> f64 {
    strength_with_volume(squared_volume(dist), dist)
}

fn distance_matrix(points: &[&[f64]]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| points.iter().map(|q| euclid(p, q)).collect())
        .collect()
}

/// Signed volume times `n!` of the simplex on `n+1` points in R^n.
pub(crate) fn oriented_volume(points: &[&[f64]]) -> f64 {
    let p0 = points[0];
    let rows: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    det(&rows)
}

/// Orientation sign and strength of a simplex given by coordinates; degenerate simplices get `(0, 0)`.
pub(crate) fn signed_strength(points: &[&[f64]]) -> (i8, f64) {
    let n = points.len() - 1;
    let dist = distance_matrix(points);
    let vol = oriented_volume(points);
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let volume_sq = (vol / fact) * (vol / fact);
    if negligible(volume_sq, &dist) {
        return (0, 0.0);
    }
    (if vol > 0.0 { 1 } else { -1 }, strength_with_volume(volume_sq, &dist))
}

/// Strength of the simplex on `n+1` points in R^n for `n` in 1..=3.
pub fn strength(points: &[Vec<f64>]) -> Result<f64> {
    let n = points.len().checked_sub(1).ok_or(GeoError::Empty("simplex"))?;
    if !(1..=3).contains(&n) {
        return Err(GeoError::Unsupported(format!("strength of a simplex on {} points", points.len())));
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(GeoError::DimensionMismatch { expected: n, found: p.len() });
    }
    let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    Ok(signed_strength(&refs).1)
}
