//! Exact Earth Mover's Distance via the transportation simplex method.
//!
//! The basis is kept as a spanning tree of `m + n - 1` cells of the bipartite
//! supply/demand graph. Dual potentials are recomputed along the tree, the
//! entering cell is the most negative reduced cost (switching to the smallest
//! index rule after a run of degenerate pivots), and flow is pushed around the
//! unique cycle closed by the entering cell.

use std::collections::VecDeque;

use super::cost::CostMatrix;
use crate::error::{GeoError, Result};

/// Tolerance on the deviation of a weight vector's sum from 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;
/// Optimality tolerance on reduced costs, relative to the largest cost (at least 1).
pub const REDUCED_COST_TOL: f64 = 1e-12;

const DEGENERATE_RUN_LIMIT: usize = 50;

/// Optimal transport plan together with its total cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    pub cost: f64,
    /// Row-major `rows x cols` flow matrix.
    pub flow: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
}

impl Transport {
    pub fn flow_at(&self, i: usize, j: usize) -> f64 {
        self.flow[i * self.cols + j]
    }
}

/// Validates a weight vector and rescales it to sum exactly to 1.
pub fn normalize_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(GeoError::Empty("weights"));
    }
    if let Some(&bad) = weights.iter().find(|w| !w.is_finite() || **w <= 0.0) {
        return Err(GeoError::InvalidWeight(bad));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(GeoError::WeightSum(total));
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Earth Mover's Distance between weighted distributions with the given ground costs.
pub fn emd(supply: &[f64], demand: &[f64], costs: &CostMatrix) -> Result<Transport> {
    if costs.rows() != supply.len() {
        return Err(GeoError::DimensionMismatch { expected: supply.len(), found: costs.rows() });
    }
    if costs.cols() != demand.len() {
        return Err(GeoError::DimensionMismatch { expected: demand.len(), found: costs.cols() });
    }
    let a = normalize_weights(supply)?;
    let b = normalize_weights(demand)?;
    TransportSimplex::new(&a, &b, costs).solve()
}

/// Convenience wrapper returning only the optimal cost.
pub fn emd_cost(supply: &[f64], demand: &[f64], costs: &CostMatrix) -> Result<f64> {
    emd(supply, demand, costs).map(|t| t.cost)
}

struct TransportSimplex<'a> {
    m: usize,
    n: usize,
    costs: &'a CostMatrix,
    flow: Vec<f64>,
    basic: Vec<bool>,
    basis: Vec<(usize, usize)>,
}

impl<'a> TransportSimplex<'a> {
    fn new(a: &[f64], b: &[f64], costs: &'a CostMatrix) -> Self {
        let (m, n) = (a.len(), b.len());
        let mut flow = vec![0.0; m * n];
        let mut basic = vec![false; m * n];
        let mut basis = Vec::with_capacity(m + n - 1);
        let mut ra = a.to_vec();
        let mut rb = b.to_vec();
        let (mut i, mut j) = (0, 0);
        loop {
            let x = ra[i].min(rb[j]).max(0.0);
            flow[i * n + j] = x;
            basic[i * n + j] = true;
            basis.push((i, j));
            ra[i] -= x;
            rb[j] -= x;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if i == m - 1 {
                j += 1;
            } else if j == n - 1 || ra[i] <= rb[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
        TransportSimplex { m, n, costs, flow, basic, basis }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        // Nodes 0..m are supplies, m..m+n are demands; edges carry the basis slot.
        let mut adj = vec![Vec::new(); self.m + self.n];
        for (slot, &(i, j)) in self.basis.iter().enumerate() {
            adj[i].push((self.m + j, slot));
            adj[self.m + j].push((i, slot));
        }
        adj
    }

    fn potentials(&self, adj: &[Vec<(usize, usize)>]) -> (Vec<f64>, Vec<f64>) {
        let mut pot = vec![f64::NAN; self.m + self.n];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &(next, slot) in &adj[node] {
                if pot[next].is_nan() {
                    let (i, j) = self.basis[slot];
                    let c = self.costs.get(i, j);
                    pot[next] = c - pot[node];
                    queue.push_back(next);
                }
            }
        }
        let v = pot.split_off(self.m);
        (pot, v)
    }

    /// Basis slots on the tree path from demand node `j` to supply node `i`.
    fn tree_path(&self, adj: &[Vec<(usize, usize)>], i: usize, j: usize) -> Vec<usize> {
        let total = self.m + self.n;
        let start = self.m + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
        let mut seen = vec![false; total];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node == i {
                break;
            }
            for &(next, slot) in &adj[node] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, slot));
                    queue.push_back(next);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = i;
        while let Some((prev, slot)) = parent[node] {
            path.push(slot);
            node = prev;
        }
        path.reverse();
        path
    }

    fn solve(mut self) -> Result<Transport> {
        let (m, n) = (self.m, self.n);
        let tol = REDUCED_COST_TOL * self.costs.max_entry().max(1.0);
        let max_pivots = 50 * (m + n) * (m + n) + 1000;
        let mut degenerate_run = 0usize;

        for _ in 0..max_pivots {
            let adj = self.adjacency();
            let (u, v) = self.potentials(&adj);
            let bland = degenerate_run >= DEGENERATE_RUN_LIMIT;

            let mut entering = None;
            let mut best = -tol;
            'scan: for i in 0..m {
                for j in 0..n {
                    if self.basic[i * n + j] {
                        continue;
                    }
                    let rc = self.costs.get(i, j) - u[i] - v[j];
                    if rc < best {
                        entering = Some((i, j));
                        if bland {
                            break 'scan;
                        }
                        best = rc;
                    }
                }
            }
            let Some((ei, ej)) = entering else {
                return Ok(self.finish());
            };

            // Cycle: entering cell (+), then alternating (-,+,...) along the tree path.
            let path = self.tree_path(&adj, ei, ej);
            let mut theta = f64::INFINITY;
            let mut leaving = usize::MAX;
            let mut leaving_cell = usize::MAX;
            for (pos, &slot) in path.iter().enumerate() {
                if pos % 2 == 0 {
                    let (i, j) = self.basis[slot];
                    let f = self.flow[i * n + j];
                    let cell = i * n + j;
                    if f < theta || (f == theta && cell < leaving_cell) {
                        theta = f;
                        leaving = slot;
                        leaving_cell = cell;
                    }
                }
            }
            let theta = theta.max(0.0);
            degenerate_run = if theta == 0.0 { degenerate_run + 1 } else { 0 };

            for (pos, &slot) in path.iter().enumerate() {
                let (i, j) = self.basis[slot];
                let f = &mut self.flow[i * n + j];
                if pos % 2 == 0 {
                    *f = (*f - theta).max(0.0);
                } else {
                    *f += theta;
                }
            }
            let (li, lj) = self.basis[leaving];
            self.flow[li * n + lj] = 0.0;
            self.basic[li * n + lj] = false;
            self.basis[leaving] = (ei, ej);
            self.basic[ei * n + ej] = true;
            self.flow[ei * n + ej] = theta;
        }
        Err(GeoError::NoConvergence(max_pivots))
    }

    fn finish(self) -> Transport {
        let cost = self
            .basis
            .iter()
            .map(|&(i, j)| self.flow[i * self.n + j] * self.costs.get(i, j))
            .sum();
        Transport { cost, flow: self.flow, rows: self.m, cols: self.n }
    }
}
