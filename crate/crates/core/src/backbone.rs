//! Protein backbones as chains of (N, A, C) atom triplets: per-residue triangle invariants, the
//! complete rigid invariant expressing each residue in the previous residue's frame, its averages,
//! subchains and reconstruction.

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::error::{GeoError, Result};

/// Smallest height of a residue triangle at its carbonyl carbon.
pub const MIN_HEIGHT: f64 = 1e-6;
/// Smallest distance between consecutive bonded atoms.
pub const MIN_BOND: f64 = 0.01;

/// Columns holding z-coordinates, which change sign under reflection.
pub const Z_COLUMNS: [usize; 3] = [2, 5, 8];
/// Columns of the first row holding `|A_1 N_1|`, `x(A_1 C_1)` and `y(A_1 C_1)`.
pub const FIRST_ROW_COLUMNS: [usize; 3] = [3, 6, 7];

type V3 = Vector3<f64>;

fn v(p: [f64; 3]) -> V3 {
    V3::new(p[0], p[1], p[2])
}

fn arr(p: V3) -> [f64; 3] {
    [p.x, p.y, p.z]
}

/// Atoms of one residue: nitrogen, alpha-carbon and carbonyl carbon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residue {
    pub n: [f64; 3],
    pub a: [f64; 3],
    pub c: [f64; 3],
}

/// Ordered chain of non-degenerate residues.
#[derive(Clone, Debug, PartialEq)]
pub struct Backbone {
    residues: Vec<Residue>,
}

/// Orthonormal frame `u, v, w = u x v` of a residue triangle with `u` along `A N`.
#[derive(Clone, Copy, Debug)]
struct Frame {
    u: V3,
    v: V3,
    w: V3,
}

impl Frame {
    fn coords(&self, x: V3) -> [f64; 3] {
        [x.dot(&self.u), x.dot(&self.v), x.dot(&self.w)]
    }

    fn vector(&self, c: &[f64]) -> V3 {
        self.u * c[0] + self.v * c[1] + self.w * c[2]
    }
}

/// Triangle coordinates `(|AN|, x(AC), y(AC))` of the vectors `AN`, `AC`, and the frame they span.
fn triangle(an: V3, ac: V3) -> Option<([f64; 3], Frame)> {
    let len = an.norm();
    if !(len > 0.0) {
        return None;
    }
    let u = an / len;
    let x = ac.dot(&u);
    let h = ac - u * x;
    let y = h.norm();
    if !(y >= MIN_HEIGHT) {
        return None;
    }
    let v = h / y;
    Some(([len, x, y], Frame { u, v, w: u.cross(&v) }))
}

impl Backbone {
    pub fn new(residues: Vec<Residue>) -> Result<Self> {
        if residues.is_empty() {
            return Err(GeoError::Empty("backbone"));
        }
        for (i, r) in residues.iter().enumerate() {
            if r.n.iter().chain(&r.a).chain(&r.c).any(|x| !x.is_finite()) {
                return Err(GeoError::NonFinite);
            }
            let mut bonds = vec![(v(r.a) - v(r.n)).norm(), (v(r.c) - v(r.a)).norm()];
            if let Some(next) = residues.get(i + 1) {
                bonds.push((v(next.n) - v(r.c)).norm());
            }
            if bonds.iter().any(|&d| d < MIN_BOND) {
                return Err(GeoError::Degenerate(format!("bond shorter than {MIN_BOND} at residue {}", i + 1)));
            }
            if triangle(v(r.n) - v(r.a), v(r.c) - v(r.a)).is_none() {
                return Err(GeoError::Degenerate(format!("collinear atoms in residue {}", i + 1)));
            }
        }
        Ok(Backbone { residues })
    }

    pub fn residues(&self) -> &[Residue] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Residues `start..start+count` (0-based start).
    pub fn subchain(&self, start: usize, count: usize) -> Result<Backbone> {
        if count == 0 || start + count > self.len() {
            return Err(GeoError::OutOfRange(format!("subchain {start}+{count} of {} residues", self.len())));
        }
        Ok(Backbone { residues: self.residues[start..start + count].to_vec() })
    }

    /// Reflection in the plane z = 0.
    pub fn mirrored(&self) -> Backbone {
        let flip = |p: [f64; 3]| [p[0], p[1], -p[2]];
        Backbone { residues: self.residues.iter().map(|r| Residue { n: flip(r.n), a: flip(r.a), c: flip(r.c) }).collect() }
    }

    /// All atoms in chain order N_1, A_1, C_1, N_2, ...
    pub fn atoms(&self) -> Vec<[f64; 3]> {
        self.residues.iter().flat_map(|r| [r.n, r.a, r.c]).collect()
    }

    fn frame(&self, i: usize) -> ([f64; 3], Frame) {
        let r = &self.residues[i];
        triangle(v(r.n) - v(r.a), v(r.c) - v(r.a)).expect("validated residue")
    }
}

/// Per-residue rows `(x(A_i N_i), x(A_i C_i), y(A_i C_i))`.
pub fn trin(s: &Backbone) -> Vec<[f64; 3]> {
    (0..s.len()).map(|i| s.frame(i).0).collect()
}

/// The m x 9 complete rigid invariant of a backbone.
#[derive(Clone, Debug, PartialEq)]
pub struct BriMatrix {
    rows: Vec<[f64; 9]>,
}

impl BriMatrix {
    /// Builds a matrix from rows, requiring the first row to be zero outside its three triangle entries.
    pub fn from_rows(rows: Vec<[f64; 9]>) -> Result<Self> {
        let first = rows.first().ok_or(GeoError::Empty("invariant rows"))?;
        if (0..9).any(|c| !FIRST_ROW_COLUMNS.contains(&c) && first[c] != 0.0) {
            return Err(GeoError::OutOfRange("first row has entries outside its triangle columns".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        Ok(BriMatrix { rows })
    }

    /// First row from a triangle row `(|AN|, x(AC), y(AC))`.
    fn first_row(t: [f64; 3]) -> [f64; 9] {
        let mut row = [0.0; 9];
        for (c, x) in FIRST_ROW_COLUMNS.iter().zip(t) {
            row[*c] = x;
        }
        row
    }

    pub fn rows(&self) -> &[[f64; 9]] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The `9m - 6` meaningful entries: three from the first row, then all later rows.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out: Vec<f64> = FIRST_ROW_COLUMNS.iter().map(|&c| self.rows[0][c]).collect();
        out.extend(self.rows[1..].iter().flatten());
        out
    }

    /// Invariant of the mirror image: every z-column changes sign.
    pub fn mirrored(&self) -> BriMatrix {
        let mut rows = self.rows.clone();
        for row in &mut rows {
            for c in Z_COLUMNS {
                row[c] = -row[c];
            }
        }
        BriMatrix { rows }
    }
}

/// Coordinates of `C_(i-1) N_i`, `N_i A_i`, `A_i C_i` in the frame of residue `i-1`, after the triangle row of residue 1.
pub fn bri(s: &Backbone) -> BriMatrix {
    let mut rows = Vec::with_capacity(s.len());
    let (first, mut frame) = s.frame(0);
    rows.push(BriMatrix::first_row(first));
    for i in 1..s.len() {
        let (prev, cur) = (&s.residues[i - 1], &s.residues[i]);
        let mut row = [0.0; 9];
        let vectors = [v(cur.n) - v(prev.c), v(cur.a) - v(cur.n), v(cur.c) - v(cur.a)];
        for (k, x) in vectors.into_iter().enumerate() {
            row[3 * k..3 * k + 3].copy_from_slice(&frame.coords(x));
        }
        rows.push(row);
        frame = s.frame(i).1;
    }
    BriMatrix { rows }
}

/// Column averages over rows 2..m.
pub fn brain(b: &BriMatrix) -> Result<[f64; 9]> {
    if b.len() < 2 {
        return Err(GeoError::Empty("averages need at least two residues"));
    }
    let mut out = [0.0; 9];
    for row in &b.rows[1..] {
        for (o, x) in out.iter_mut().zip(row) {
            *o += x;
        }
    }
    let count = (b.len() - 1) as f64;
    Ok(out.map(|x| x / count))
}

/// Chebyshev distance between flattened invariants of equally long chains.
pub fn bri_dist(a: &BriMatrix, b: &BriMatrix) -> Result<f64> {
    if a.len() != b.len() {
        return Err(GeoError::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.flatten().iter().zip(b.flatten()).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs())))
}

/// Chebyshev distance between averaged invariants; never exceeds [`bri_dist`].
pub fn brain_dist(a: &BriMatrix, b: &BriMatrix) -> Result<f64> {
    let (x, y) = (brain(a)?, brain(b)?);
    Ok(x.iter().zip(&y).fold(0.0f64, |acc, (p, q)| acc.max((p - q).abs())))
}

/// Invariants of many chains in parallel, in input order.
pub fn bri_batch(chains: &[Backbone]) -> Vec<BriMatrix> {
    chains.par_iter().map(bri).collect()
}

/// Chain realising the invariant, with `A_1` at the origin, `A_1 N_1` along x and `C_1` in the xy-plane.
pub fn reconstruct(b: &BriMatrix) -> Result<Backbone> {
    let first = FIRST_ROW_COLUMNS.map(|c| b.rows[0][c]);
    let (len, x, y) = (first[0], first[1], first[2]);
    if !(len > 0.0 && y >= MIN_HEIGHT) {
        return Err(GeoError::Degenerate("first row needs |AN| > 0 and a positive height".into()));
    }
    let a = V3::zeros();
    let n = V3::new(len, 0.0, 0.0);
    let c = V3::new(x, y, 0.0);
    let mut residues = vec![Residue { n: arr(n), a: arr(a), c: arr(c) }];
    let mut frame = triangle(n - a, c - a).expect("checked above").1;
    let mut prev_c = c;
    for (i, row) in b.rows.iter().enumerate().skip(1) {
        let n = prev_c + frame.vector(&row[0..3]);
        let a = n + frame.vector(&row[3..6]);
        let c = a + frame.vector(&row[6..9]);
        residues.push(Residue { n: arr(n), a: arr(a), c: arr(c) });
        if i + 1 < b.len() {
            frame = triangle(n - a, c - a)
                .ok_or_else(|| GeoError::Degenerate(format!("parallel frame vectors in row {}", i + 1)))?
                .1;
        }
        prev_c = c;
    }
    Backbone::new(residues)
}

/// Invariant of residues `i..i+j-1` (1-based `i`) computed from the parent invariant: only the first row is new.
pub fn subchain(b: &BriMatrix, i: usize, j: usize) -> Result<BriMatrix> {
    if i == 0 || j == 0 || i + j - 1 > b.len() {
        return Err(GeoError::OutOfRange(format!("subchain from {i} of length {j} in {} residues", b.len())));
    }
    let first = if i == 1 {
        b.rows[0]
    } else {
        let row = &b.rows[i - 1];
        let na = V3::new(row[3], row[4], row[5]);
        let ac = V3::new(row[6], row[7], row[8]);
        let t = triangle(-na, ac).ok_or_else(|| GeoError::Degenerate(format!("collinear residue {i}")))?.0;
        BriMatrix::first_row(t)
    };
    let mut rows = Vec::with_capacity(j);
    rows.push(first);
    rows.extend_from_slice(&b.rows[i..i + j - 1]);
    Ok(BriMatrix { rows })
}

/// Lipschitz factor `2(1 + 2LK)` for comparing two equally long chains.
pub fn lipschitz_factor(s: &Backbone, q: &Backbone) -> Result<f64> {
    if s.len() != q.len() {
        return Err(GeoError::DimensionMismatch { expected: s.len(), found: q.len() });
    }
    let (mut max_bond, mut min_na, mut max_ac, mut min_h) = (0.0f64, f64::INFINITY, 0.0f64, f64::INFINITY);
    for chain in [s, q] {
        for (i, r) in chain.residues.iter().enumerate() {
            let na = (v(r.a) - v(r.n)).norm();
            let ac = (v(r.c) - v(r.a)).norm();
            max_bond = max_bond.max(na).max(ac);
            if let Some(next) = chain.residues.get(i + 1) {
                max_bond = max_bond.max((v(next.n) - v(r.c)).norm());
            }
            min_na = min_na.min(na);
            max_ac = max_ac.max(ac);
            min_h = min_h.min(chain.frame(i).0[2]);
        }
    }
    let k = 1.0 / min_na + 2.0 / min_h * (1.0 + 2.0 * max_ac / min_na);
    Ok(2.0 * (1.0 + 2.0 * max_bond * k))
}

/// Row `i` (1-based, `i >= 2`) multiplied by `((8LK)^(i-1) - 1) / (8LK - 1)` for a given product `LK`.
pub fn bri_hat(b: &BriMatrix, lk: f64) -> Result<BriMatrix> {
    let base = 8.0 * lk;
    if !(base.is_finite() && base > 0.0 && base != 1.0) {
        return Err(GeoError::OutOfRange(format!("8LK must be positive and different from 1, got {base}")));
    }
    let mut rows = b.rows.clone();
    for (i, row) in rows.iter_mut().enumerate().skip(1) {
        let factor = (base.powi(i as i32) - 1.0) / (base - 1.0);
        for x in row.iter_mut() {
            *x *= factor;
        }
    }
    Ok(BriMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_of_worked_residue() {
        let (t, f) = triangle(V3::new(-1.5, 0.0, 0.0), V3::new(0.5, 1.0, 0.0)).unwrap();
        assert_eq!(t, [1.5, -0.5, 1.0]);
        assert!((f.w - V3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn collinear_residue_is_rejected() {
        let r = Residue { n: [0.0; 3], a: [1.0, 0.0, 0.0], c: [2.0, 0.0, 0.0] };
        assert!(Backbone::new(vec![r]).is_err());
        assert!(Backbone::new(vec![]).is_err());
    }

    #[test]
    fn first_row_layout() {
        let r = Residue { n: [0.0; 3], a: [1.5, 0.0, 0.0], c: [2.0, 1.0, 0.0] };
        let b = bri(&Backbone::new(vec![r]).unwrap());
        assert_eq!(b.rows()[0], [0.0, 0.0, 0.0, 1.5, 0.0, 0.0, -0.5, 1.0, 0.0]);
        assert_eq!(b.flatten(), vec![1.5, -0.5, 1.0]);
    }
}
