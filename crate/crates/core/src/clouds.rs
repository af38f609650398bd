//! Isometry invariants of finite clouds: sorted radial and pairwise distances and pointwise distance distributions.

use crate::error::{GeoError, Result};
use crate::numcore::euclid;
use crate::rows::{RowMetric, WeightedRow, WeightedRowMatrix};

/// Finite set of points in R^n with optional labels.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().ok_or(GeoError::Empty("point cloud"))?.len();
        if dim == 0 {
            return Err(GeoError::OutOfRange("points need at least one coordinate".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(GeoError::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(GeoError::NonFinite);
            }
        }
        Ok(PointCloud { dim, points, labels: None })
    }

    pub fn with_labels(points: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        let mut cloud = PointCloud::new(points)?;
        if labels.len() != cloud.points.len() {
            return Err(GeoError::DimensionMismatch { expected: cloud.points.len(), found: labels.len() });
        }
        cloud.labels = Some(labels);
        Ok(cloud)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let m = self.points.len() as f64;
        (0..self.dim)
            .map(|c| self.points.iter().map(|p| p[c]).sum::<f64>() / m)
            .collect()
    }

    /// Full symmetric matrix of Euclidean distances.
    pub fn distance_matrix(&self) -> Vec<Vec<f64>> {
        let m = self.points.len();
        let mut d = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let x = euclid(&self.points[i], &self.points[j]);
                d[i][j] = x;
                d[j][i] = x;
            }
        }
        d
    }
}

/// Sorted Radial Distances: distances from the centroid in decreasing order.
pub fn srd(cloud: &PointCloud) -> Vec<f64> {
    let c = cloud.centroid();
    let mut r: Vec<f64> = cloud.points().iter().map(|p| euclid(p, &c)).collect();
    r.sort_by(|a, b| b.total_cmp(a));
    r
}

/// Sorted Pairwise Distances in increasing order.
pub fn spd(cloud: &PointCloud) -> Result<Vec<f64>> {
    if cloud.len() < 2 {
        return Err(GeoError::OutOfRange("pairwise distances need at least 2 points".into()));
    }
    let d = cloud.distance_matrix();
    let m = cloud.len();
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(d[i][j]);
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Pointwise Distance Distribution: each point's `k` nearest-neighbour distances, rows merged within `collapse_tol`.
pub fn pdd(cloud: &PointCloud, k: usize, collapse_tol: f64) -> Result<WeightedRowMatrix> {
    let m = cloud.len();
    if k == 0 || k + 1 > m {
        return Err(GeoError::OutOfRange(format!("k={k} must lie in 1..={}", m.saturating_sub(1))));
    }
    let d = cloud.distance_matrix();
    let w = 1.0 / m as f64;
    let rows = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).filter(|&j| j != i).map(|j| d[i][j]).collect();
            row.sort_by(f64::total_cmp);
            row.truncate(k);
            WeightedRow { weight: w, values: row }
        })
        .collect();
    WeightedRowMatrix::new(k, rows, collapse_tol)
}

/// EMD between two distance distributions under a row ground metric.
pub fn pdd_dist(p: &WeightedRowMatrix, q: &WeightedRowMatrix, metric: RowMetric) -> Result<f64> {
    p.emd(q, metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn unit_square_pairwise() {
        let c = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let s = 2f64.sqrt();
        assert!(close(&spd(&c).unwrap(), &[1.0, 1.0, 1.0, 1.0, s, s]));
    }

    #[test]
    fn single_point_and_pair() {
        let one = PointCloud::new(vec![vec![3.0, -1.0]]).unwrap();
        assert_eq!(srd(&one), vec![0.0]);
        assert!(spd(&one).is_err());
        let two = PointCloud::new(vec![vec![0.0], vec![2.5]]).unwrap();
        assert_eq!(spd(&two).unwrap(), vec![2.5]);
        let p = pdd(&two, 1, 0.0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.rows()[0].weight, 1.0);
        assert_eq!(p.rows()[0].values, vec![2.5]);
    }

    #[test]
    fn k_range_checked() {
        let c = PointCloud::new(vec![vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        assert!(pdd(&c, 0, 0.0).is_err());
        assert!(pdd(&c, 3, 0.0).is_err());
        assert!(pdd(&c, 2, 0.0).is_ok());
    }
}
