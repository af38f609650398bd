//! Density functions `psi_k` of periodic sequences of points and disjoint intervals on the line.
//!
//! `psi_k(t)` is the fraction of a period covered by exactly `k` of the intervals
//! `[c_i - r_i - t, c_i + r_i + t]` and all their translates.

use crate::error::{GeoError, Result};

/// Slack allowed when checking that intervals do not overlap.
pub const OVERLAP_TOL: f64 = 1e-12;

/// Tolerance used when collapsing repeated or collinear corners.
pub const CORNER_TOL: f64 = 1e-12;

/// A continuous piecewise linear function on `[0, inf)` given by its corners, constant after the last one.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    corners: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    /// Sorts corners by `t`, collapses repeated ones and drops corners where the slope does not change.
    pub fn new(mut corners: Vec<(f64, f64)>) -> Result<Self> {
        if corners.is_empty() {
            return Err(GeoError::Empty("corner list"));
        }
        if corners.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        corners.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(corners.len());
        for c in corners {
            match merged.last() {
                Some(last) if (c.0 - last.0).abs() <= CORNER_TOL => {
                    if (c.1 - last.1).abs() > 1e-9 {
                        return Err(GeoError::OutOfRange(format!("discontinuity at t = {}", c.0)));
                    }
                }
                _ => merged.push(c),
            }
        }
        let mut simplified: Vec<(f64, f64)> = Vec::with_capacity(merged.len());
        for (idx, &c) in merged.iter().enumerate() {
            if let (Some(&prev), Some(&next)) = (simplified.last(), merged.get(idx + 1)) {
                let (a, b): ((f64, f64), (f64, f64)) = (prev, next);
                let predicted = a.1 + (b.1 - a.1) * (c.0 - a.0) / (b.0 - a.0);
                if (predicted - c.1).abs() <= CORNER_TOL {
                    continue;
                }
            }
            simplified.push(c);
        }
        // A trailing constant piece carries no corner.
        while simplified.len() >= 2 {
            let n = simplified.len();
            if (simplified[n - 1].1 - simplified[n - 2].1).abs() <= CORNER_TOL {
                simplified.pop();
            } else {
                break;
            }
        }
        Ok(PiecewiseLinear { corners: simplified })
    }

    pub fn corners(&self) -> &[(f64, f64)] {
        &self.corners
    }

    pub fn eval(&self, t: f64) -> f64 {
        let c = &self.corners;
        if t <= c[0].0 {
            return c[0].1;
        }
        let idx = c.partition_point(|p| p.0 <= t);
        if idx == c.len() {
            return c[c.len() - 1].1;
        }
        let (a, b) = (c[idx - 1], c[idx]);
        a.1 + (b.1 - a.1) * (t - a.0) / (b.0 - a.0)
    }

    /// Pointwise sum, exact at the union of breakpoints.
    pub fn sum(parts: &[PiecewiseLinear]) -> Result<Self> {
        let mut ts: Vec<f64> = parts.iter().flat_map(|p| p.corners.iter().map(|c| c.0)).collect();
        ts.push(0.0);
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() <= CORNER_TOL);
        PiecewiseLinear::new(ts.into_iter().map(|t| (t, parts.iter().map(|p| p.eval(t)).sum())).collect())
    }

    /// Largest absolute difference, attained at a breakpoint of one of the two functions.
    pub fn max_difference(&self, other: &PiecewiseLinear) -> f64 {
        self.corners
            .iter()
            .chain(&other.corners)
            .map(|c| (self.eval(c.0) - other.eval(c.0)).abs())
            .fold(0.0, f64::max)
    }

    /// Area under the graph over `[0, inf)`; infinite if the final value is not zero.
    pub fn integral(&self) -> f64 {
        let last = self.corners[self.corners.len() - 1].1;
        if last.abs() > CORNER_TOL {
            return f64::INFINITY;
        }
        let first = self.corners[0];
        let lead = first.0.max(0.0) * first.1;
        lead + self.corners.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum::<f64>()
    }

    fn scale_t(&self, factor: f64) -> Self {
        PiecewiseLinear { corners: self.corners.iter().map(|&(t, v)| (t * factor, v)).collect() }
    }
}

/// A periodic sequence of closed intervals `[c_i - r_i, c_i + r_i] + period * Z` with disjoint interiors.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSequence1D {
    period: f64,
    centres: Vec<f64>,
    radii: Vec<f64>,
}

impl PeriodicSequence1D {
    /// Centres are reduced modulo the period and sorted together with their radii.
    pub fn new(period: f64, centres: Vec<f64>, radii: Vec<f64>) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(GeoError::OutOfRange(format!("period must be positive, got {period}")));
        }
        if centres.is_empty() {
            return Err(GeoError::Empty("sequence motif"));
        }
        if centres.len() != radii.len() {
            return Err(GeoError::DimensionMismatch { expected: centres.len(), found: radii.len() });
        }
        if centres.iter().chain(&radii).any(|x| !x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        if let Some(r) = radii.iter().find(|r| **r < 0.0) {
            return Err(GeoError::OutOfRange(format!("radius {r} is negative")));
        }
        let mut pairs: Vec<(f64, f64)> = centres
            .iter()
            .map(|c| {
                let x = c.rem_euclid(period);
                if x >= period {
                    0.0
                } else {
                    x
                }
            })
            .zip(radii.iter().copied())
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pairs.windows(2).any(|w| w[1].0 - w[0].0 <= 0.0) {
            return Err(GeoError::Degenerate("centres must be distinct modulo the period".into()));
        }
        let seq = PeriodicSequence1D {
            period,
            centres: pairs.iter().map(|p| p.0).collect(),
            radii: pairs.iter().map(|p| p.1).collect(),
        };
        if let Some((i, g)) = seq.raw_gaps().into_iter().enumerate().find(|(_, g)| *g < -OVERLAP_TOL * period) {
            return Err(GeoError::Degenerate(format!("intervals overlap before centre {i} (gap {g})")));
        }
        Ok(seq)
    }

    /// Points without radii.
    pub fn points(period: f64, centres: Vec<f64>) -> Result<Self> {
        let n = centres.len();
        PeriodicSequence1D::new(period, centres, vec![0.0; n])
    }

    /// Each radius set to half the distance from its centre to the closest other point of the sequence.
    pub fn with_neighbour_radii(&self) -> Result<Self> {
        let m = self.len();
        let radii = (0..m)
            .map(|i| {
                if m == 1 {
                    return 0.5 * self.period;
                }
                let prev = (self.centres[i] - self.centres[(i + m - 1) % m]).rem_euclid(self.period);
                let next = (self.centres[(i + 1) % m] - self.centres[i]).rem_euclid(self.period);
                0.5 * prev.min(next)
            })
            .collect();
        PeriodicSequence1D::new(self.period, self.centres.clone(), radii)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn centres(&self) -> &[f64] {
        &self.centres
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.centres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centres.is_empty()
    }

    pub fn has_radii(&self) -> bool {
        self.radii.iter().any(|&r| r > 0.0)
    }

    /// `g_i`: gap before interval `i`, scaled to period 1.
    fn raw_gaps(&self) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|i| {
                let j = (i + m - 1) % m;
                let prev_end = self.centres[j] + self.radii[j] - if i == 0 { self.period } else { 0.0 };
                ((self.centres[i] - self.radii[i]) - prev_end) / self.period
            })
            .collect()
    }

    fn unit_gaps(&self) -> Vec<f64> {
        self.raw_gaps().into_iter().map(|g| g.max(0.0)).collect()
    }

    fn unit_radii(&self) -> Vec<f64> {
        self.radii.iter().map(|r| r / self.period).collect()
    }
}

fn trapezium(corners: [(f64, f64); 4]) -> Result<PiecewiseLinear> {
    PiecewiseLinear::new(corners.to_vec())
}

fn psi_unit(seq: &PeriodicSequence1D, k: usize) -> Result<PiecewiseLinear> {
    let m = seq.len();
    let g = seq.unit_gaps();
    let r = seq.unit_radii();
    let at = |i: usize| i % m;
    match k {
        0 => {
            let l: f64 = 2.0 * r.iter().sum::<f64>();
            let mut sorted = g.clone();
            sorted.sort_by(f64::total_cmp);
            let mut corners = vec![(0.0, 1.0 - l)];
            let mut prefix = 0.0;
            for (i, &gi) in sorted.iter().enumerate() {
                corners.push((0.5 * gi, (1.0 - l - prefix - (m - i) as f64 * gi).max(0.0)));
                prefix += gi;
            }
            PiecewiseLinear::new(corners)
        }
        1 => {
            let parts = (0..m)
                .map(|i| {
                    let (gi, gn) = (g[i], g[at(i + 1)]);
                    let top = gi.min(gn) + 2.0 * r[i];
                    trapezium([(0.0, 2.0 * r[i]), (0.5 * gi, top), (0.5 * gn, top), (0.5 * (gi + gn) + r[i], 0.0)])
                })
                .collect::<Result<Vec<_>>>()?;
            PiecewiseLinear::sum(&parts)
        }
        _ => {
            let parts = (0..m)
                .map(|i| {
                    let a = g[i] + 2.0 * r[i];
                    let b = g[at(i + k)] + 2.0 * r[at(i + k - 1)];
                    let (lo, hi) = (a.min(b), a.max(b));
                    let s: f64 = (i + 1..i + k).map(|j| g[at(j)]).sum::<f64>()
                        + 2.0 * (i + 1..i + k - 1).map(|j| r[at(j)]).sum::<f64>();
                    trapezium([(0.5 * s, 0.0), (0.5 * (lo + s), lo), (0.5 * (s + hi), lo), (0.5 * (lo + s + hi), 0.0)])
                })
                .collect::<Result<Vec<_>>>()?;
            PiecewiseLinear::sum(&parts)
        }
    }
}

/// The `k`-th density function with `t` measured in the units of the sequence.
pub fn psi(seq: &PeriodicSequence1D, k: usize) -> Result<PiecewiseLinear> {
    Ok(psi_unit(seq, k)?.scale_t(seq.period))
}

/// Area under `psi_k` for a sequence of points.
pub fn rho(seq: &PeriodicSequence1D, k: usize) -> Result<f64> {
    if seq.has_radii() {
        return Err(GeoError::Unsupported("densities rho_k are defined for sequences of points".into()));
    }
    if k == 0 {
        let d = seq.unit_gaps();
        return Ok(0.25 * d.iter().map(|x| x * x).sum::<f64>() * seq.period);
    }
    Ok(psi(seq, k)?.integral())
}

/// Whether two sequences have the same density functions `psi_k` within `tol`.
///
/// For points the comparison runs over `k = 0..=m`, which fixes every other `psi_k` by periodicity;
/// with radii it runs over `k = 0..=k_max`.
pub fn fingerprint_equal(a: &PeriodicSequence1D, b: &PeriodicSequence1D, k_max: usize, tol: f64) -> Result<bool> {
    let last = if !a.has_radii() && !b.has_radii() { a.len().max(b.len()) } else { k_max };
    for k in 0..=last {
        if psi(a, k)?.max_difference(&psi(b, k)?) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}
