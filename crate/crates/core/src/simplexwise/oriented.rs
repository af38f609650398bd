use std::cmp::Ordering;

use super::strength::{lipschitz_constant, signed_strength};
use super::{compare_weighted, Comparison};
use crate::clouds::PointCloud;
use crate::error::{GeoError, Result};
use crate::numcore::{bottleneck_cost, euclid, CostMatrix};
use crate::util::{binomial, combinations, det, lex_cmp, sign_of, signed_permutations};

/// Distances from one non-base point to every base point, the orientation sign of the simplex they span and its strength.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedColumn {
    pub distances: Vec<f64>,
    pub sign: i8,
    pub strength: f64,
}

impl OrientedColumn {
    fn key(&self) -> Vec<f64> {
        let mut k = self.distances.clone();
        k.push(self.sign as f64);
        k
    }
}

/// Base selection for oriented distributions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseKind {
    /// `n - 1` cloud points plus a fixed centre.
    Centred,
    /// `n` cloud points.
    Plain,
}

/// Oriented relative distribution of one base set in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedDistribution {
    /// Number of base points (including the centre when present).
    size: usize,
    /// Number of leading base points that may be permuted.
    movable: usize,
    /// Distances between base points for pairs `(i, j)`, `i < j`, row-major.
    base: Vec<f64>,
    columns: Vec<OrientedColumn>,
}

impl OrientedDistribution {
    pub fn base_distances(&self) -> &[f64] {
        &self.base
    }

    pub fn columns(&self) -> &[OrientedColumn] {
        &self.columns
    }

    fn base_entry(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.base[i * (2 * self.size - i - 1) / 2 + (j - i - 1)]
    }

    /// Reorders the movable base points by `perm` and rescales signs by the permutation sign.
    fn arranged(&self, perm: &[usize], perm_sign: i8) -> OrientedDistribution {
        let full: Vec<usize> = perm.iter().copied().chain(self.movable..self.size).collect();
        let mut base = Vec::with_capacity(self.base.len());
        for a in 0..self.size {
            for b in a + 1..self.size {
                base.push(self.base_entry(full[a], full[b]));
            }
        }
        let mut columns: Vec<OrientedColumn> = self
            .columns
            .iter()
            .map(|c| OrientedColumn {
                distances: full.iter().map(|&p| c.distances[p]).collect(),
                sign: c.sign * perm_sign,
                strength: c.strength,
            })
            .collect();
        columns.sort_by(|x, y| lex_cmp(&x.key(), &y.key()));
        OrientedDistribution { size: self.size, movable: self.movable, base, columns }
    }

    fn canonical(self) -> OrientedDistribution {
        signed_permutations(self.movable)
            .into_iter()
            .map(|(p, s)| self.arranged(&p, s))
            .min_by(|a, b| a.key_cmp(b))
            .expect("at least one permutation")
    }

    fn key_cmp(&self, other: &OrientedDistribution) -> Ordering {
        lex_cmp(&self.base, &other.base).then_with(|| {
            for (x, y) in self.columns.iter().zip(&other.columns) {
                match lex_cmp(&x.key(), &y.key()) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    fn approx_eq(&self, other: &OrientedDistribution, tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);
        close(&self.base, &other.base)
            && self.columns.len() == other.columns.len()
            && self
                .columns
                .iter()
                .zip(&other.columns)
                .all(|(a, b)| a.sign == b.sign && close(&a.distances, &b.distances))
    }

    fn mirrored(&self) -> OrientedDistribution {
        let mut out = self.clone();
        for c in &mut out.columns {
            c.sign = -c.sign;
        }
        out.canonical()
    }

    /// Max metric over permutations of movable base points, with signed strengths scaled by `1/lambda`.
    pub fn max_metric(&self, other: &OrientedDistribution, lambda: f64) -> Result<f64> {
        if self.size != other.size || self.columns.len() != other.columns.len() {
            return Err(GeoError::DimensionMismatch { expected: self.columns.len(), found: other.columns.len() });
        }
        let embed = |c: &OrientedColumn| -> Vec<f64> {
            let mut v = c.distances.clone();
            v.push(c.sign as f64 * c.strength / lambda);
            v
        };
        let theirs: Vec<Vec<f64>> = other.columns.iter().map(embed).collect();
        let mut best = f64::INFINITY;
        for (perm, s) in signed_permutations(self.movable) {
            let moved = self.arranged(&perm, s);
            let base_gap = moved.base.iter().zip(&other.base).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if base_gap >= best {
                continue;
            }
            let ours: Vec<Vec<f64>> = moved.columns.iter().map(embed).collect();
            let col_gap = if ours.is_empty() {
                0.0
            } else {
                let costs = CostMatrix::from_fn(ours.len(), theirs.len(), |i, j| {
                    ours[i].iter().zip(&theirs[j]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
                })?;
                bottleneck_cost(&costs)?
            };
            best = best.min(base_gap.max(col_gap));
        }
        Ok(best)
    }
}

/// Weighted collection of oriented distributions over all base sets of a cloud.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSimplexwise {
    dim: usize,
    m: usize,
    kind: BaseKind,
    entries: Vec<(OrientedDistribution, usize)>,
}

impl OrientedSimplexwise {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    pub fn entries(&self) -> &[(OrientedDistribution, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        let movable = match self.kind {
            BaseKind::Centred => self.dim - 1,
            BaseKind::Plain => self.dim,
        };
        binomial(self.m, movable)
    }

    pub fn weights(&self) -> Vec<f64> {
        let t = self.total() as f64;
        self.entries.iter().map(|(_, c)| *c as f64 / t).collect()
    }

    /// The same distribution with every sign reversed, as produced by a mirror image of the cloud.
    pub fn mirror(&self) -> OrientedSimplexwise {
        let entries = self.entries.iter().map(|(e, c)| (e.mirrored(), *c)).collect();
        collapse(self.dim, self.m, self.kind, entries, 0.0)
    }
}

fn collapse(
    dim: usize,
    m: usize,
    kind: BaseKind,
    mut items: Vec<(OrientedDistribution, usize)>,
    tol: f64,
) -> OrientedSimplexwise {
    items.sort_by(|a, b| a.0.key_cmp(&b.0));
    let mut entries: Vec<(OrientedDistribution, usize)> = Vec::new();
    for (d, c) in items {
        match entries.last_mut() {
            Some((last, count)) if last.approx_eq(&d, tol) => *count += c,
            _ => entries.push((d, c)),
        }
    }
    OrientedSimplexwise { dim, m, kind, entries }
}

fn build(points: &[Vec<f64>], centre: Option<&[f64]>, tol: f64) -> Result<OrientedSimplexwise> {
    let m = points.len();
    let dim = points[0].len();
    if !(2..=3).contains(&dim) {
        return Err(GeoError::Unsupported(format!("oriented distributions in dimension {dim}")));
    }
    let movable = if centre.is_some() { dim - 1 } else { dim };
    if m <= movable {
        return Err(GeoError::OutOfRange(format!("need more than {movable} points, got {m}")));
    }
    let items = combinations(m, movable)
        .into_iter()
        .map(|subset| {
            let mut base_pts: Vec<&[f64]> = subset.iter().map(|&i| points[i].as_slice()).collect();
            if let Some(c) = centre {
                base_pts.push(c);
            }
            let size = base_pts.len();
            let mut base = Vec::new();
            for a in 0..size {
                for b in a + 1..size {
                    base.push(euclid(base_pts[a], base_pts[b]));
                }
            }
            let columns = (0..m)
                .filter(|i| !subset.contains(i))
                .map(|qi| {
                    let q = &points[qi];
                    let mut simplex: Vec<&[f64]> = base_pts.clone();
                    simplex.push(q);
                    let (orientation, strength) = signed_strength(&simplex);
                    let sign = if orientation == 0 {
                        0
                    } else {
                        let vectors: Vec<Vec<f64>> =
                            base_pts.iter().map(|p| q.iter().zip(p.iter()).map(|(x, y)| x - y).collect()).collect();
                        sign_of(det(&vectors))
                    };
                    OrientedColumn { distances: base_pts.iter().map(|p| euclid(q, p)).collect(), sign, strength }
                })
                .collect();
            let d = OrientedDistribution { size, movable, base, columns };
            (d.canonical(), 1usize)
        })
        .collect();
    let kind = if centre.is_some() { BaseKind::Centred } else { BaseKind::Plain };
    Ok(collapse(dim, m, kind, items, tol))
}

/// Simplexwise Centred Distribution: the cloud is translated so that its centroid is the origin.
pub fn scd(cloud: &PointCloud) -> Result<OrientedSimplexwise> {
    let c = cloud.centroid();
    let shifted: Vec<Vec<f64>> = cloud
        .points()
        .iter()
        .map(|p| p.iter().zip(&c).map(|(x, y)| x - y).collect())
        .collect();
    let origin = vec![0.0; cloud.dim()];
    build(&shifted, Some(&origin), 0.0)
}

/// Centred distribution around an explicitly given centre, without translating the cloud.
pub fn scd_with_centre(cloud: &PointCloud, centre: &[f64]) -> Result<OrientedSimplexwise> {
    if centre.len() != cloud.dim() {
        return Err(GeoError::DimensionMismatch { expected: cloud.dim(), found: centre.len() });
    }
    build(cloud.points(), Some(centre), 0.0)
}

/// Oriented Simplexwise Distribution over all `n`-point base sets.
pub fn osd(cloud: &PointCloud) -> Result<OrientedSimplexwise> {
    build(cloud.points(), None, 0.0)
}

/// LAC or EMD between oriented distributions with max-metric ground costs.
pub fn scd_dist(x: &OrientedSimplexwise, y: &OrientedSimplexwise, mode: Comparison) -> Result<f64> {
    if x.dim != y.dim {
        return Err(GeoError::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    if x.kind != y.kind || x.m != y.m {
        return Err(GeoError::DimensionMismatch { expected: x.m, found: y.m });
    }
    let lambda = lipschitz_constant(x.dim)?;
    let cx: Vec<usize> = x.entries.iter().map(|e| e.1).collect();
    let cy: Vec<usize> = y.entries.iter().map(|e| e.1).collect();
    compare_weighted(&cx, &cy, mode, |i, j| x.entries[i].0.max_metric(&y.entries[j].0, lambda))
}
