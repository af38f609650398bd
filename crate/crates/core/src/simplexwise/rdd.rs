use std::cmp::Ordering;

use super::{compare_weighted, Comparison};
use crate::clouds::PointCloud;
use crate::error::{GeoError, Result};
use crate::numcore::{bottleneck_cost, minkowski_unchecked, CostMatrix, Exponent};
use crate::util::{binomial, combinations, lex_cmp, signed_permutations};

/// Largest supported base size.
pub const MAX_ORDER: usize = 3;

/// Relative distance distribution of one unordered base set, in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct Rdd {
    h: usize,
    /// Distances between base points for pairs `(i, j)`, `i < j`, in row-major order.
    base: Vec<f64>,
    /// Lexicographically sorted columns of distances from a non-base point to the base points.
    columns: Vec<Vec<f64>>,
}

fn pair_index(h: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * h - i - 1) / 2 + (j - i - 1)
}

impl Rdd {
    fn from_parts(h: usize, full_base: &dyn Fn(usize, usize) -> f64, raw_columns: &[Vec<f64>]) -> Rdd {
        let mut best: Option<Rdd> = None;
        for (perm, _) in signed_permutations(h) {
            let candidate = Rdd::arranged(h, &perm, full_base, raw_columns);
            if best.as_ref().is_none_or(|b| candidate.key_cmp(b) == Ordering::Less) {
                best = Some(candidate);
            }
        }
        best.expect("at least one permutation")
    }

    fn arranged(h: usize, perm: &[usize], full_base: &dyn Fn(usize, usize) -> f64, raw: &[Vec<f64>]) -> Rdd {
        let mut base = Vec::with_capacity(h * (h - 1) / 2);
        for a in 0..h {
            for b in a + 1..h {
                base.push(full_base(perm[a], perm[b]));
            }
        }
        let mut columns: Vec<Vec<f64>> = raw.iter().map(|c| perm.iter().map(|&p| c[p]).collect()).collect();
        columns.sort_by(|x, y| lex_cmp(x, y));
        Rdd { h, base, columns }
    }

    fn key_cmp(&self, other: &Rdd) -> Ordering {
        lex_cmp(&self.base, &other.base).then_with(|| {
            for (x, y) in self.columns.iter().zip(&other.columns) {
                match lex_cmp(x, y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    fn approx_eq(&self, other: &Rdd, tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);
        close(&self.base, &other.base)
            && self.columns.len() == other.columns.len()
            && self.columns.iter().zip(&other.columns).all(|(a, b)| close(a, b))
    }

    pub fn order(&self) -> usize {
        self.h
    }

    pub fn base_distances(&self) -> &[f64] {
        &self.base
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    fn base_entry(&self, i: usize, j: usize) -> f64 {
        self.base[pair_index(self.h, i, j)]
    }

    /// Max metric: minimum over base permutations of the larger of the base and column discrepancies.
    pub fn max_metric(&self, other: &Rdd, q: Exponent) -> Result<f64> {
        if self.h != other.h {
            return Err(GeoError::DimensionMismatch { expected: self.h, found: other.h });
        }
        if self.columns.len() != other.columns.len() {
            return Err(GeoError::DimensionMismatch { expected: self.columns.len(), found: other.columns.len() });
        }
        let h = self.h;
        let mut best = f64::INFINITY;
        for (perm, _) in signed_permutations(h) {
            let moved = Rdd::arranged(h, &perm, &|i, j| self.base_entry(i, j), &self.columns);
            let base_gap = moved
                .base
                .iter()
                .zip(&other.base)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if base_gap >= best {
                continue;
            }
            let col_gap = if moved.columns.is_empty() {
                0.0
            } else {
                let costs = CostMatrix::from_fn(moved.columns.len(), other.columns.len(), |i, j| {
                    minkowski_unchecked(&moved.columns[i], &other.columns[j], q)
                })?;
                bottleneck_cost(&costs)?
            };
            best = best.min(base_gap.max(col_gap));
        }
        Ok(best)
    }

    /// Sorted base distances followed by sorted column averages.
    pub fn average_distances(&self) -> Vec<f64> {
        let mut spd = self.base.clone();
        spd.sort_by(f64::total_cmp);
        let mut avg: Vec<f64> = self
            .columns
            .iter()
            .map(|c| c.iter().sum::<f64>() / self.h as f64)
            .collect();
        avg.sort_by(f64::total_cmp);
        spd.extend(avg);
        spd
    }
}

/// Simplexwise distance distribution: all base sets of a fixed order with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Sdd {
    h: usize,
    m: usize,
    entries: Vec<(Rdd, usize)>,
}

impl Sdd {
    pub fn order(&self) -> usize {
        self.h
    }

    pub fn cloud_size(&self) -> usize {
        self.m
    }

    /// Distinct canonical RDDs with their multiplicities.
    pub fn entries(&self) -> &[(Rdd, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        binomial(self.m, self.h)
    }

    pub fn weights(&self) -> Vec<f64> {
        let t = self.total() as f64;
        self.entries.iter().map(|(_, c)| *c as f64 / t).collect()
    }
}

fn check_distance_matrix(d: &[Vec<f64>]) -> Result<()> {
    let m = d.len();
    for row in d {
        if row.len() != m {
            return Err(GeoError::DimensionMismatch { expected: m, found: row.len() });
        }
        if row.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(GeoError::OutOfRange("distances must be finite and non-negative".into()));
        }
    }
    Ok(())
}

/// SDD of order `h` from a full distance matrix of any finite metric space.
pub fn sdd_from_distances(d: &[Vec<f64>], h: usize, collapse_tol: f64) -> Result<Sdd> {
    check_distance_matrix(d)?;
    let m = d.len();
    if h == 0 || h > MAX_ORDER {
        return Err(GeoError::Unsupported(format!("order h={h}; supported orders are 1..={MAX_ORDER}")));
    }
    if h >= m {
        return Err(GeoError::OutOfRange(format!("order h={h} must be below the cloud size {m}")));
    }
    let mut rdds: Vec<Rdd> = combinations(m, h)
        .into_iter()
        .map(|base| {
            let others: Vec<usize> = (0..m).filter(|i| !base.contains(i)).collect();
            let raw: Vec<Vec<f64>> = others.iter().map(|&q| base.iter().map(|&p| d[p][q]).collect()).collect();
            Rdd::from_parts(h, &|i, j| d[base[i]][base[j]], &raw)
        })
        .collect();
    rdds.sort_by(|a, b| a.key_cmp(b));
    let mut entries: Vec<(Rdd, usize)> = Vec::new();
    for r in rdds {
        match entries.last_mut() {
            Some((last, count)) if last.approx_eq(&r, collapse_tol) => *count += 1,
            _ => entries.push((r, 1)),
        }
    }
    Ok(Sdd { h, m, entries })
}

/// SDD of a point cloud under Euclidean distances.
pub fn sdd(cloud: &PointCloud, h: usize) -> Result<Sdd> {
    sdd_from_distances(&cloud.distance_matrix(), h, 0.0)
}

/// Distance between SDDs using max-metric costs between RDDs.
pub fn sdd_dist(x: &Sdd, y: &Sdd, mode: Comparison, q: Exponent) -> Result<f64> {
    if x.h != y.h {
        return Err(GeoError::DimensionMismatch { expected: x.h, found: y.h });
    }
    if x.m != y.m {
        return Err(GeoError::DimensionMismatch { expected: x.m, found: y.m });
    }
    let q = q.validate()?;
    let counts_x: Vec<usize> = x.entries.iter().map(|e| e.1).collect();
    let counts_y: Vec<usize> = y.entries.iter().map(|e| e.1).collect();
    compare_weighted(&counts_x, &counts_y, mode, |i, j| x.entries[i].0.max_metric(&y.entries[j].0, q))
}

/// Average Simplexwise Distribution: one averaged vector per base set, with multiplicities.
pub fn asd(s: &Sdd) -> Vec<(Vec<f64>, usize)> {
    s.entries.iter().map(|(r, c)| (r.average_distances(), *c)).collect()
}

/// Coordinatewise `t`-th moment of the averaged distribution.
pub fn sdm(s: &Sdd, t: u32) -> Result<Vec<f64>> {
    if t == 0 {
        return Err(GeoError::OutOfRange("moment order must be at least 1".into()));
    }
    let total = s.total() as f64;
    let vectors = asd(s);
    let len = vectors[0].0.len();
    Ok((0..len)
        .map(|c| {
            let power_sum: f64 = vectors
                .iter()
                .map(|(v, count)| *count as f64 / total * v[c].powi(t as i32))
                .sum();
            match t {
                1 => power_sum,
                2 => (power_sum / total).sqrt(),
                _ => (total.powi(1 - t as i32) * power_sum).powf(1.0 / t as f64),
            }
        })
        .collect())
}
