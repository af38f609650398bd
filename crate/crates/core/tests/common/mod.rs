#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Minimum over bijections of the maximum cost.
pub fn brute_bottleneck(c: &[Vec<f64>]) -> f64 {
    permutations(c.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| c[i][j]).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// Minimum over bijections of the summed cost.
pub fn brute_assignment(c: &[Vec<f64>]) -> f64 {
    permutations(c.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| c[i][j]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Transportation LP optimum by enumerating every basic solution.
///
/// A basis is a set of `m + n - 1` cells forming a spanning tree of the
/// bipartite graph; its flows follow by repeatedly peeling leaves.
pub fn lp_vertex_emd(a: &[f64], b: &[f64], c: &[Vec<f64>]) -> f64 {
    let (m, n) = (a.len(), b.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let size = m + n - 1;
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(size);
    combos(&cells, size, 0, &mut chosen, &mut |subset| {
        if let Some(flow) = peel(a, b, subset) {
            if flow.iter().all(|&f| f >= -1e-12) {
                let cost: f64 = subset.iter().zip(&flow).map(|(&(i, j), f)| f * c[i][j]).sum();
                best = best.min(cost);
            }
        }
    });
    best
}

fn combos<F: FnMut(&[(usize, usize)])>(
    cells: &[(usize, usize)],
    size: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut F,
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    for k in start..cells.len() {
        if cells.len() - k < size - chosen.len() {
            break;
        }
        chosen.push(cells[k]);
        combos(cells, size, k + 1, chosen, f);
        chosen.pop();
    }
}

fn peel(a: &[f64], b: &[f64], cells: &[(usize, usize)]) -> Option<Vec<f64>> {
    let (m, n) = (a.len(), b.len());
    let mut ra = a.to_vec();
    let mut rb = b.to_vec();
    let mut flow = vec![f64::NAN; cells.len()];
    let mut open = vec![true; cells.len()];
    for _ in 0..cells.len() {
        let mut progressed = false;
        for node in 0..m + n {
            let incident: Vec<usize> = (0..cells.len())
                .filter(|&e| open[e] && (if node < m { cells[e].0 == node } else { cells[e].1 == node - m }))
                .collect();
            if incident.len() == 1 {
                let e = incident[0];
                let (i, j) = cells[e];
                let x = if node < m { ra[i] } else { rb[j] };
                flow[e] = x;
                ra[i] -= x;
                rb[j] -= x;
                open[e] = false;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return None;
        }
    }
    let balanced = ra.iter().chain(&rb).all(|r| r.abs() < 1e-9);
    balanced.then_some(flow)
}

pub fn random_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

pub fn random_points<R: Rng>(rng: &mut R, m: usize, dim: usize, spread: f64) -> Vec<Vec<f64>> {
    (0..m).map(|_| (0..dim).map(|_| rng.gen_range(-spread..spread)).collect()).collect()
}

/// Random orthogonal matrix (rows) via Gram-Schmidt, optionally forced to be a reflection.
pub fn random_orthogonal<R: Rng>(rng: &mut R, dim: usize, reflect: bool) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for r in &rows {
            let d: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(r) {
                *x -= d * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            rows.push(v.iter().map(|x| x / norm).collect());
        }
    }
    let det = det(&rows);
    if (det < 0.0) != reflect {
        for x in rows[0].iter_mut() {
            *x = -*x;
        }
    }
    rows
}

pub fn det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let n = m.len();
            (0..n)
                .map(|c| {
                    let minor: Vec<Vec<f64>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect())
                        .collect();
                    let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                    sign * m[0][c] * det(&minor)
                })
                .sum()
        }
    }
}

/// Applies `x -> R x + t` to every point.
pub fn transform(points: &[Vec<f64>], rot: &[Vec<f64>], shift: &[f64]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| {
            rot.iter()
                .zip(shift)
                .map(|(row, s)| row.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() + s)
                .collect()
        })
        .collect()
}

pub fn perturb<R: Rng>(rng: &mut R, points: &[Vec<f64>], eps: f64) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| {
            let dir: Vec<f64> = p.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            let len = rng.gen_range(0.0..eps);
            p.iter().zip(&dir).map(|(x, d)| x + d / norm * len).collect()
        })
        .collect()
}

pub fn min_pairwise(points: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            best = best.min(d);
        }
    }
    best
}

/// Prints and records one criterion outcome.
pub fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id:>2}: {name} ({detail})");
}
