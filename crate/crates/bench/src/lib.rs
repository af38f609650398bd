//! Deterministic inputs shared by the benchmarks.

use geoinv::backbone::{Backbone, Residue};
use geoinv::clouds::PointCloud;
use geoinv::numcore::CostMatrix;
use geoinv::periodic::{cell_basis, PeriodicSet};
use geoinv::seq1p::OnePeriodicSequence;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn costs(n: usize, seed: u64) -> CostMatrix {
    let mut r = rng(seed);
    CostMatrix::from_fn(n, n, |_, _| r.gen_range(0.0..10.0)).expect("finite costs")
}

pub fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

pub fn cloud(m: usize, dim: usize, seed: u64) -> PointCloud {
    let mut r = rng(seed);
    PointCloud::new((0..m).map(|_| (0..dim).map(|_| r.gen_range(-10.0..10.0)).collect()).collect()).expect("valid cloud")
}

/// Triclinic cell with `motif` random atoms.
pub fn crystal(motif: usize, seed: u64) -> PeriodicSet {
    let mut r = rng(seed);
    let basis = cell_basis(4.0, 5.0, 6.0, 80.0, 95.0, 100.0).expect("valid cell");
    let frac = (0..motif).map(|_| (0..3).map(|_| r.gen_range(0.0..1.0)).collect()).collect();
    PeriodicSet::from_fractional(basis, frac).expect("distinct atoms")
}

pub fn sequence(m: usize, seed: u64) -> OnePeriodicSequence {
    let mut r = rng(seed);
    let period = 10.0 * m as f64;
    let points = (0..m).map(|i| vec![10.0 * i as f64 + r.gen_range(0.0..5.0), r.gen_range(-1.0..1.0)]).collect();
    OnePeriodicSequence::new(period, points).expect("distinct times")
}

/// Helical chain with small random jitter.
pub fn chain(m: usize, seed: u64) -> Backbone {
    let mut r = rng(seed);
    let mut j = || r.gen_range(-0.1..0.1);
    let at = |t: f64, rad: f64| [rad * t.cos(), rad * t.sin(), 1.5 * t];
    let residues = (0..m)
        .map(|i| {
            let t = i as f64 * 1.7;
            let (n, a, c) = (at(t, 2.3), at(t + 0.5, 2.3), at(t + 1.0, 2.0));
            Residue { n: [n[0] + j(), n[1], n[2]], a: [a[0], a[1] + j(), a[2]], c: [c[0], c[1], c[2] + j()] }
        })
        .collect();
    Backbone::new(residues).expect("non-degenerate chain")
}
