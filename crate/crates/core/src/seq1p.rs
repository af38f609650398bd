//! Finite ordered sequences in R^n and 1-periodic sequences in R x R^(n-1): cyclic distance
//! matrices, signed strengths, time shifts and metrics minimised over cyclic or dihedral relabellings.

use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{GeoError, Result};
use crate::numcore::{euclid, Exponent};
use crate::simplexwise::{lipschitz_constant, signed_strength};

/// Largest common motif size accepted by [`seq_metric`] unless overridden.
pub const DEFAULT_LCM_CAP: usize = 100_000;

fn check_points(points: &[Vec<f64>], min_len: usize, what: &'static str) -> Result<usize> {
    if points.len() < min_len {
        return Err(GeoError::Empty(what));
    }
    let n = points[0].len();
    for p in points {
        if p.len() != n {
            return Err(GeoError::DimensionMismatch { expected: n, found: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
    }
    Ok(n)
}

/// Ordered sequence of at least two points in R^n.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedSequence {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl OrderedSequence {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = check_points(&points, 2, "ordered sequence needs at least two points")?;
        Ok(OrderedSequence { points, dim })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Relabelling `p'_j = p_(j+s)`.
    pub fn shifted(&self, s: usize) -> Self {
        let m = self.len();
        let points = (0..m).map(|j| self.points[(j + s) % m].clone()).collect();
        OrderedSequence { points, dim: self.dim }
    }

    /// Relabelling in the opposite order.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        OrderedSequence { points, dim: self.dim }
    }

    /// Mirror image under negation of the last coordinate.
    pub fn mirrored(&self) -> Self {
        let mut points = self.points.clone();
        for p in &mut points {
            if let Some(x) = p.last_mut() {
                *x = -*x;
            }
        }
        OrderedSequence { points, dim: self.dim }
    }
}

/// Cyclic distance matrix: row `i` (1-based) holds `|p_j - p_(i+j)|` for every `j`, indices modulo `m`.
pub fn cdm(t: &OrderedSequence) -> Vec<Vec<f64>> {
    cdm_of(&t.points)
}

fn cdm_of(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = points.len();
    (1..m)
        .map(|i| (0..m).map(|j| euclid(&points[j], &points[(i + j) % m])).collect())
        .collect()
}

/// Cyclic distances with the orientation signs and strengths of the consecutive simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct Cds {
    pub distances: Vec<Vec<f64>>,
    pub signs: Vec<i8>,
    pub strengths: Vec<f64>,
}

impl Cds {
    /// Signed strengths `sign_i * sigma_i`.
    pub fn signed_strengths(&self) -> Vec<f64> {
        self.signs.iter().zip(&self.strengths).map(|(&s, &x)| s as f64 * x).collect()
    }

    /// Action of the relabelling `p'_j = p_(j+s)`: columns and signs shift cyclically.
    pub fn shifted(&self, s: usize) -> Self {
        let m = self.signs.len();
        Cds {
            distances: self.distances.iter().map(|row| (0..m).map(|j| row[(j + s) % m]).collect()).collect(),
            signs: (0..m).map(|i| self.signs[(i + s) % m]).collect(),
            strengths: (0..m).map(|i| self.strengths[(i + s) % m]).collect(),
        }
    }

    /// Action of the reverse relabelling for points in R^n: rows and columns of distances reverse,
    /// and signs reverse with the factor `(-1)^floor(3n/2)`.
    pub fn reversed(&self, n: usize) -> Self {
        let m = self.signs.len();
        let factor = reversal_factor(n);
        let source = |i: usize| (2 * m - 1 - i - n % m) % m;
        let mut distances = self.distances.clone();
        distances.reverse();
        for row in &mut distances {
            row.reverse();
        }
        Cds {
            distances,
            signs: (0..m).map(|i| factor * self.signs[source(i)]).collect(),
            strengths: (0..m).map(|i| self.strengths[source(i)]).collect(),
        }
    }
}

fn reversal_factor(n: usize) -> i8 {
    if (3 * n / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign and strength of each simplex on `p_i, ..., p_(i+n)`, indices modulo `m`.
fn signed_windows(points: &[Vec<f64>], n: usize) -> (Vec<i8>, Vec<f64>) {
    let m = points.len();
    (0..m)
        .map(|i| {
            let window: Vec<&[f64]> = (0..=n).map(|k| points[(i + k) % m].as_slice()).collect();
            signed_strength(&window)
        })
        .unzip()
}

/// Cyclic distances with signs for sequences in R^2 or R^3.
pub fn cds(t: &OrderedSequence) -> Result<Cds> {
    if !(2..=3).contains(&t.dim) {
        return Err(GeoError::Unsupported(format!("signed cyclic distances in dimension {}", t.dim)));
    }
    Ok(cds_of(&t.points, t.dim))
}

fn cds_of(points: &[Vec<f64>], n: usize) -> Cds {
    let (signs, strengths) = signed_windows(points, n);
    Cds { distances: cdm_of(points), signs, strengths }
}

fn check_same_shape(s: &OrderedSequence, t: &OrderedSequence) -> Result<()> {
    if s.len() != t.len() {
        return Err(GeoError::DimensionMismatch { expected: s.len(), found: t.len() });
    }
    if s.dim != t.dim {
        return Err(GeoError::DimensionMismatch { expected: s.dim, found: t.dim });
    }
    Ok(())
}

/// `||CDM(S) - CDM(T)||_q / (m(m-1))^(1/q)`.
pub fn mcd(s: &OrderedSequence, t: &OrderedSequence, q: Exponent) -> Result<f64> {
    check_same_shape(s, t)?;
    let q = q.validate()?;
    let (a, b) = (cdm(s), cdm(t));
    let m = s.len() as f64;
    Ok(q.norm(a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| x - y)) / q.root(m * (m - 1.0)))
}

/// Maximum of MCD and `2/lambda_n` times the largest difference of signed strengths.
pub fn mcs(s: &OrderedSequence, t: &OrderedSequence, q: Exponent) -> Result<f64> {
    let dist = mcd(s, t, q)?;
    let (a, b) = (cds(s)?, cds(t)?);
    let lambda = lipschitz_constant(s.dim)?;
    let gap = a
        .signed_strengths()
        .iter()
        .zip(b.signed_strengths())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
    Ok(dist.max(2.0 / lambda * gap))
}

/// Periodic sequence `M + l e_1 Z` with motif points ordered by their distinct times in `[0, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OnePeriodicSequence {
    period: f64,
    times: Vec<f64>,
    values: Vec<Vec<f64>>,
}

impl OnePeriodicSequence {
    /// Each point is `(time, values...)`; points are sorted by time.
    pub fn new(period: f64, points: Vec<Vec<f64>>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(GeoError::OutOfRange(format!("period must be positive, got {period}")));
        }
        let n = check_points(&points, 1, "motif")?;
        if n == 0 {
            return Err(GeoError::OutOfRange("points need a time coordinate".into()));
        }
        let mut points = points;
        points.sort_by(|a, b| a[0].total_cmp(&b[0]));
        for w in points.windows(2) {
            if w[0][0] >= w[1][0] {
                return Err(GeoError::Degenerate(format!("repeated time {}", w[0][0])));
            }
        }
        if points[0][0] < 0.0 || points[points.len() - 1][0] >= period {
            return Err(GeoError::OutOfRange(format!("times must lie in [0, {period})")));
        }
        let times = points.iter().map(|p| p[0]).collect();
        let values = points.into_iter().map(|p| p[1..].to_vec()).collect();
        Ok(OnePeriodicSequence { period, times, values })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Dimension of the value factor.
    pub fn value_dim(&self) -> usize {
        self.values[0].len()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// The same sequence encoded with motif `kM` and period `kl`.
    pub fn extended(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(GeoError::OutOfRange("extension factor must be positive".into()));
        }
        let mut times = Vec::with_capacity(k * self.len());
        let mut values = Vec::with_capacity(k * self.len());
        for i in 0..k {
            for (t, v) in self.times.iter().zip(&self.values) {
                times.push(t + i as f64 * self.period);
                values.push(v.clone());
            }
        }
        Ok(OnePeriodicSequence { period: k as f64 * self.period, times, values })
    }
}

/// Gaps `t(p_(i+1)) - t(p_i)` between consecutive times, the last one wrapping by the period.
pub fn time_shift(s: &OnePeriodicSequence) -> Vec<f64> {
    let m = s.len();
    (0..m)
        .map(|i| if i + 1 < m { s.times[i + 1] - s.times[i] } else { s.times[0] + s.period - s.times[i] })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Group {
    /// Shifts of labels only.
    #[default]
    Cyclic,
    /// Shifts and reversal of labels, matching reflections of time.
    Dihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Equivalence {
    /// Any isometry of the value factor.
    #[default]
    Isometry,
    /// Orientation-preserving isometries of the value factor.
    Rigid,
}

impl FromStr for Group {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cyclic" => Ok(Group::Cyclic),
            "dihedral" => Ok(Group::Dihedral),
            other => Err(GeoError::OutOfRange(format!("unknown group '{other}'"))),
        }
    }
}

impl FromStr for Equivalence {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "isometry" => Ok(Equivalence::Isometry),
            "rigid" => Ok(Equivalence::Rigid),
            other => Err(GeoError::OutOfRange(format!("unknown equivalence '{other}'"))),
        }
    }
}

/// Optimal relabelling of the second sequence: `p'_j = p_(j+shift)`, or `p'_j = p_(shift-j)` when reversed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeqMatch {
    pub value: f64,
    pub shift: usize,
    pub reversed: bool,
    /// Time and value parts at the optimum.
    pub time_part: f64,
    pub value_part: f64,
}

#[derive(Clone, Copy)]
struct Relabel {
    m: usize,
    shift: usize,
    reversed: bool,
}

impl Relabel {
    fn point(self, j: usize) -> usize {
        if self.reversed {
            (self.shift + self.m - j % self.m) % self.m
        } else {
            (j + self.shift) % self.m
        }
    }

    fn gap(self, j: usize) -> usize {
        if self.reversed {
            (self.shift + 2 * self.m - 1 - j) % self.m
        } else {
            (j + self.shift) % self.m
        }
    }

    fn window(self, i: usize, n: usize) -> usize {
        if self.reversed {
            (self.shift + 2 * self.m - i - n % self.m) % self.m
        } else {
            (i + self.shift) % self.m
        }
    }
}

struct Prepared {
    gaps: Vec<f64>,
    values: Vec<Vec<f64>>,
    signed: Vec<f64>,
}

fn prepare(s: &OnePeriodicSequence, k: usize, rigid: bool) -> Result<Prepared> {
    let ext = s.extended(k)?;
    let n = ext.value_dim();
    let signed = if rigid && n > 0 {
        let (signs, strengths) = signed_windows(&ext.values, n);
        signs.iter().zip(strengths).map(|(&g, x)| g as f64 * x).collect()
    } else {
        Vec::new()
    };
    Ok(Prepared { gaps: time_shift(&ext), signed, values: ext.values })
}

fn evaluate(a: &Prepared, b: &Prepared, r: Relabel, q: Exponent, lambda: Option<f64>, n: usize) -> (f64, f64) {
    let m = r.m;
    let d_t = q.norm((0..m).map(|j| a.gaps[j] - b.gaps[r.gap(j)])) / q.root(m as f64);
    if n == 0 || m < 2 {
        return (d_t, 0.0);
    }
    let diffs = (1..m).flat_map(|i| {
        (0..m).map(move |j| {
            euclid(&a.values[j], &a.values[(i + j) % m]) - euclid(&b.values[r.point(j)], &b.values[r.point(i + j)])
        })
    });
    let mut d_v = q.norm(diffs) / q.root((m * (m - 1)) as f64);
    if let Some(lambda) = lambda {
        let factor = if r.reversed { reversal_factor(n) as f64 } else { 1.0 };
        let gap = (0..m).fold(0.0f64, |acc, i| acc.max((a.signed[i] - factor * b.signed[r.window(i, n)]).abs()));
        d_v = d_v.max(2.0 / lambda * gap);
    }
    (d_t, d_v)
}

/// Distance between 1-periodic sequences after extending both motifs to the lowest common multiple
/// of their sizes, minimised over relabellings of the second one.
pub fn seq_match(
    s: &OnePeriodicSequence,
    t: &OnePeriodicSequence,
    q: Exponent,
    group: Group,
    equivalence: Equivalence,
    lcm_cap: usize,
) -> Result<SeqMatch> {
    let q = q.validate()?;
    let n = s.value_dim();
    if t.value_dim() != n {
        return Err(GeoError::DimensionMismatch { expected: n, found: t.value_dim() });
    }
    if n > 2 {
        return Err(GeoError::Unsupported(format!("value dimension {n}")));
    }
    let m = s.len().lcm(&t.len());
    if m > lcm_cap {
        return Err(GeoError::OutOfRange(format!("common motif size {m} exceeds the cap {lcm_cap}")));
    }
    let rigid = equivalence == Equivalence::Rigid;
    let lambda = if rigid && n > 0 { Some(lipschitz_constant(n)?) } else { None };
    let a = prepare(s, m / s.len(), rigid)?;
    let b = prepare(t, m / t.len(), rigid)?;
    let reversals: &[bool] = match group {
        Group::Cyclic => &[false],
        Group::Dihedral => &[false, true],
    };
    let candidates: Vec<Relabel> = reversals
        .iter()
        .flat_map(|&reversed| (0..m).map(move |shift| Relabel { m, shift, reversed }))
        .collect();
    let best = candidates
        .par_iter()
        .enumerate()
        .map(|(order, &r)| {
            let (d_t, d_v) = evaluate(&a, &b, r, q, lambda, n);
            (d_t.max(d_v), order, r, d_t, d_v)
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
        .expect("at least one relabelling");
    Ok(SeqMatch { value: best.0, shift: best.2.shift, reversed: best.2.reversed, time_part: best.3, value_part: best.4 })
}

/// Cyclic or dihedral metric under isometry or rigid motion with the default cap on the common motif size.
pub fn seq_metric(
    s: &OnePeriodicSequence,
    t: &OnePeriodicSequence,
    q: Exponent,
    group: Group,
    equivalence: Equivalence,
) -> Result<f64> {
    Ok(seq_match(s, t, q, group, equivalence, DEFAULT_LCM_CAP)?.value)
}
