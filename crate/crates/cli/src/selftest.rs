use anyhow::Result;
use geoinv::backbone::{bri, bri_dist, reconstruct, Backbone, Residue};
use geoinv::clouds::{pdd, pdd_dist, PointCloud};
use geoinv::lattice2d::{basis_invariant, inverse_design, projected_invariant};
use geoinv::numcore::{emd_cost, lac, CostMatrix};
use geoinv::rows::RowMetric;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::Table;

const TOL: f64 = 1e-9;

type Check = fn(&mut ChaCha8Rng) -> Result<bool>;

/// Runs every check `trials` times and reports the failure counts.
pub fn run(seed: u64, trials: usize) -> Result<(Table, usize)> {
    let checks: [(&str, Check); 4] = [
        ("cloud_pdd_isometry", cloud_isometry),
        ("emd_equals_assignment", emd_matches_assignment),
        ("lattice_design_round_trip", lattice_round_trip),
        ("backbone_round_trip", backbone_round_trip),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = Table::new(&["check", "trials", "failures"]);
    let mut total = 0;
    for (name, check) in checks {
        let mut failures = 0usize;
        for _ in 0..trials {
            if !check(&mut rng)? {
                failures += 1;
            }
        }
        total += failures;
        table.push(vec![name.into(), trials.into(), failures.into()]);
    }
    Ok((table, total))
}

fn cloud_isometry(rng: &mut ChaCha8Rng) -> Result<bool> {
    let m = rng.gen_range(2..=6);
    let pts: Vec<Vec<f64>> = (0..m).map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]).collect();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    let shift = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
    let moved: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| {
            let (c, s) = (theta.cos(), theta.sin());
            vec![c * p[0] - s * flip * p[1] + shift[0], s * p[0] + c * flip * p[1] + shift[1]]
        })
        .collect();
    let (a, b) = (PointCloud::new(pts)?, PointCloud::new(moved)?);
    let k = m - 1;
    Ok(pdd_dist(&pdd(&a, k, TOL)?, &pdd(&b, k, TOL)?, RowMetric::default())? <= TOL)
}

fn emd_matches_assignment(rng: &mut ChaCha8Rng) -> Result<bool> {
    let n = rng.gen_range(1..=6);
    let costs = CostMatrix::from_fn(n, n, |_, _| rng.gen_range(0.0..10.0))?;
    let w = vec![1.0 / n as f64; n];
    Ok((emd_cost(&w, &w, &costs)? - lac(&costs)?).abs() <= TOL)
}

fn lattice_round_trip(rng: &mut ChaCha8Rng) -> Result<bool> {
    let (x, y) = loop {
        let (x, y): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        if x + y <= 1.0 {
            break (x, y);
        }
    };
    let size = rng.gen_range(0.1..20.0);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let ri = basis_invariant(&inverse_design(x, y, size, sign)?)?;
    let pi = projected_invariant(&ri)?;
    Ok((pi.x - x).abs() <= TOL && (pi.y - y).abs() <= TOL && (ri.size() - size).abs() <= TOL * size.max(1.0))
}

fn backbone_round_trip(rng: &mut ChaCha8Rng) -> Result<bool> {
    let m = rng.gen_range(1..=20);
    let mut point = || [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
    let residues: Vec<Residue> = (0..m).map(|_| Residue { n: point(), a: point(), c: point() }).collect();
    let Ok(chain) = Backbone::new(residues) else { return Ok(true) };
    let b = bri(&chain);
    Ok(bri_dist(&b, &bri(&reconstruct(&b)?))? <= TOL)
}
