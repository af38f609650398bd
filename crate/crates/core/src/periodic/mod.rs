//! Periodic point sets `S = M + Λ` with a rank-`l` lattice in `R^n`, their exact neighbour
//! distances, pointwise distance distributions, packing coefficient and near-duplicate search.

mod dedup;
mod invariants;

pub use dedup::{dedup, DedupPair, DedupParams};
pub use invariants::{ada, amd, deviations, lnd, pda, pda_dist, pdd_periodic, ppc, Deviations};

use nalgebra::DMatrix;

use crate::error::{GeoError, Result};

/// Motif points closer than this under lattice translations are rejected as duplicates.
pub const DUPLICATE_TOL: f64 = 1e-6;

/// Default number of neighbours for crystal comparisons.
pub const DEFAULT_K: usize = 100;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Pairwise size reduction: repeatedly shortens each vector by integer multiples of the others.
fn reduce_basis(mut basis: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let l = basis.len();
    let mut changed = true;
    let mut guard = 0;
    while changed && guard < 10_000 {
        changed = false;
        guard += 1;
        basis.sort_by(|a, b| norm2(a).total_cmp(&norm2(b)));
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                let mu = (dot(&basis[i], &basis[j]) / norm2(&basis[j])).round();
                if mu != 0.0 {
                    let candidate: Vec<f64> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a - mu * b).collect();
                    if norm2(&candidate) < norm2(&basis[i]) * (1.0 - 1e-12) {
                        basis[i] = candidate;
                        changed = true;
                    }
                }
            }
        }
    }
    basis
}

/// A periodic point set: a finite motif repeated by all integer combinations of `l` basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSet {
    dim: usize,
    basis: Vec<Vec<f64>>,
    motif: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
    // Reduced basis, its dual vectors inside the span, and per-point fractional and perpendicular parts.
    reduced: Vec<Vec<f64>>,
    dual: Vec<Vec<f64>>,
    fractional: Vec<Vec<f64>>,
    perpendicular: Vec<Vec<f64>>,
}

impl PeriodicSet {
    /// Builds a set from Cartesian basis vectors and motif points.
    pub fn new(basis: Vec<Vec<f64>>, motif: Vec<Vec<f64>>) -> Result<Self> {
        let dim = basis.first().ok_or(GeoError::Empty("lattice basis"))?.len();
        if dim == 0 {
            return Err(GeoError::OutOfRange("basis vectors need at least one coordinate".into()));
        }
        if basis.len() > dim {
            return Err(GeoError::OutOfRange(format!("{} basis vectors in R^{dim}", basis.len())));
        }
        if motif.is_empty() {
            return Err(GeoError::Empty("motif"));
        }
        for v in basis.iter().chain(&motif) {
            if v.len() != dim {
                return Err(GeoError::DimensionMismatch { expected: dim, found: v.len() });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(GeoError::NonFinite);
            }
        }
        let l = basis.len();
        let gram = DMatrix::from_fn(l, l, |i, j| dot(&basis[i], &basis[j]));
        let scale: f64 = basis.iter().map(|b| norm2(b)).product();
        if !(gram.determinant() > 1e-12 * scale) {
            return Err(GeoError::Degenerate("lattice basis vectors are linearly dependent".into()));
        }
        let reduced = reduce_basis(basis.clone());
        let gram = DMatrix::from_fn(l, l, |i, j| dot(&reduced[i], &reduced[j]));
        let inverse = gram.try_inverse().ok_or_else(|| GeoError::Degenerate("singular Gram matrix".into()))?;
        let dual: Vec<Vec<f64>> = (0..l)
            .map(|i| (0..dim).map(|c| (0..l).map(|j| inverse[(i, j)] * reduced[j][c]).sum()).collect())
            .collect();
        let mut fractional = Vec::with_capacity(motif.len());
        let mut perpendicular = Vec::with_capacity(motif.len());
        for p in &motif {
            let coeffs: Vec<f64> = dual.iter().map(|d| dot(d, p)).collect();
            let inside: Vec<f64> = (0..dim).map(|c| (0..l).map(|i| coeffs[i] * reduced[i][c]).sum()).collect();
            perpendicular.push(p.iter().zip(&inside).map(|(a, b)| a - b).collect());
            fractional.push(
                coeffs
                    .iter()
                    .map(|f| {
                        let r = f.rem_euclid(1.0);
                        if r >= 1.0 {
                            0.0
                        } else {
                            r
                        }
                    })
                    .collect(),
            );
        }
        let set = PeriodicSet { dim, basis, motif, labels: None, reduced, dual, fractional, perpendicular };
        set.check_duplicates()?;
        Ok(set)
    }

    /// Builds a set from fractional motif coordinates relative to the given basis.
    pub fn from_fractional(basis: Vec<Vec<f64>>, fractional: Vec<Vec<f64>>) -> Result<Self> {
        let l = basis.len();
        let dim = basis.first().map_or(0, |b| b.len());
        let mut motif = Vec::with_capacity(fractional.len());
        for f in &fractional {
            if f.len() != l {
                return Err(GeoError::DimensionMismatch { expected: l, found: f.len() });
            }
            motif.push((0..dim).map(|c| (0..l).map(|i| f[i] * basis[i][c]).sum()).collect());
        }
        PeriodicSet::new(basis, motif)
    }

    /// A lattice, the set with a single motif point at the origin.
    pub fn lattice(basis: Vec<Vec<f64>>) -> Result<Self> {
        let dim = basis.first().map_or(0, |b| b.len());
        PeriodicSet::new(basis, vec![vec![0.0; dim]])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.motif.len() {
            return Err(GeoError::DimensionMismatch { expected: self.motif.len(), found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank `l` of the lattice.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn motif(&self) -> &[Vec<f64>] {
        &self.motif
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of motif points `m`.
    pub fn motif_size(&self) -> usize {
        self.motif.len()
    }

    /// `l`-dimensional volume of a unit cell.
    pub fn cell_volume(&self) -> f64 {
        let l = self.rank();
        DMatrix::from_fn(l, l, |i, j| dot(&self.basis[i], &self.basis[j])).determinant().max(0.0).sqrt()
    }

    /// Representative of motif point `i` inside the reduced unit cell.
    fn cell_point(&self, i: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|c| {
                self.perpendicular[i][c]
                    + (0..self.rank()).map(|a| self.fractional[i][a] * self.reduced[a][c]).sum::<f64>()
            })
            .collect()
    }

    fn translate(&self, t: &[i64]) -> Vec<f64> {
        (0..self.dim).map(|c| t.iter().zip(&self.reduced).map(|(&n, b)| n as f64 * b[c]).sum()).collect()
    }

    fn check_duplicates(&self) -> Result<()> {
        let l = self.rank();
        let points: Vec<Vec<f64>> = (0..self.motif.len()).map(|i| self.cell_point(i)).collect();
        let offsets = cube(l, 1);
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let shift: Vec<i64> = (0..l).map(|a| (self.fractional[j][a] - self.fractional[i][a]).round() as i64).collect();
                for o in &offsets {
                    let t: Vec<i64> = shift.iter().zip(o).map(|(s, d)| d - s).collect();
                    let v = self.translate(&t);
                    let d: f64 = (0..self.dim).map(|c| (points[j][c] + v[c] - points[i][c]).powi(2)).sum::<f64>().sqrt();
                    if d < DUPLICATE_TOL {
                        return Err(GeoError::Degenerate(format!(
                            "motif points {i} and {j} coincide up to a lattice translation (distance {d:e})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact `k` smallest distances from every motif point to all other points of the infinite set.
    pub fn neighbours(&self, k: usize) -> Result<Vec<Vec<f64>>> {
        if k == 0 {
            return Err(GeoError::OutOfRange("k must be at least 1".into()));
        }
        let width = self.dual.iter().map(|d| 1.0 / norm2(d).sqrt()).fold(f64::INFINITY, f64::min);
        let points: Vec<Vec<f64>> = (0..self.motif.len()).map(|i| self.cell_point(i)).collect();
        let mut result = Vec::with_capacity(points.len());
        for p in &points {
            let mut best: Vec<f64> = Vec::with_capacity(4 * k);
            let mut radius = 0i64;
            loop {
                for t in shell(self.rank(), radius) {
                    let v = self.translate(&t);
                    let origin = t.iter().all(|&n| n == 0);
                    for q in &points {
                        if origin && std::ptr::eq(p, q) {
                            continue;
                        }
                        let d2: f64 = (0..self.dim).map(|c| (q[c] + v[c] - p[c]).powi(2)).sum();
                        best.push(d2.sqrt());
                    }
                }
                if best.len() > k {
                    best.select_nth_unstable_by(k - 1, f64::total_cmp);
                    best.truncate(k);
                }
                let kth = if best.len() == k { best.iter().copied().fold(0.0, f64::max) } else { f64::INFINITY };
                // Every point in later shells lies at least radius * width away.
                if radius as f64 * width >= kth {
                    break;
                }
                radius += 1;
            }
            best.sort_by(f64::total_cmp);
            result.push(best);
        }
        Ok(result)
    }

    /// The set scaled uniformly by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let scale = |v: &Vec<f64>| v.iter().map(|x| x * factor).collect::<Vec<f64>>();
        PeriodicSet::new(self.basis.iter().map(scale).collect(), self.motif.iter().map(scale).collect())
    }
}

/// All integer vectors in `[-r, r]^l`.
fn cube(l: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(l)];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-r..=r).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Integer vectors with maximum absolute coordinate exactly `r`.
fn shell(l: usize, r: i64) -> Vec<Vec<i64>> {
    cube(l, r).into_iter().filter(|t| t.iter().map(|x| x.abs()).max().unwrap_or(0) == r).collect()
}

/// Crystallographic cell matrix from lengths and angles in degrees, rows are basis vectors.
pub fn cell_basis(a: f64, b: f64, c: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Vec<Vec<f64>>> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(GeoError::OutOfRange(format!("cell lengths must be positive, got {a}, {b}, {c}")));
    }
    let (ca, cb, cg) = (alpha.to_radians().cos(), beta.to_radians().cos(), gamma.to_radians().cos());
    let sg = gamma.to_radians().sin();
    if sg.abs() < 1e-12 {
        return Err(GeoError::Degenerate(format!("cell angle gamma = {gamma}")));
    }
    let cx = c * cb;
    let cy = c * (ca - cb * cg) / sg;
    let cz2 = c * c - cx * cx - cy * cy;
    if !(cz2 > 0.0) {
        return Err(GeoError::Degenerate(format!("cell angles ({alpha}, {beta}, {gamma}) do not form a cell")));
    }
    Ok(vec![vec![a, 0.0, 0.0], vec![b * cg, b * sg, 0.0], vec![cx, cy, cz2.sqrt()]])
}

/// Volume of the unit ball in `R^l`.
pub fn unit_ball_volume(l: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let mut v = if l % 2 == 0 { 1.0 } else { 2.0 };
    let mut d = if l % 2 == 0 { 2 } else { 3 };
    while d <= l {
        v *= 2.0 * pi / d as f64;
        d += 2;
    }
    v
}
