mod common;

use geoinv::density1d::{fingerprint_equal, psi, rho, PeriodicSequence1D, PiecewiseLinear};
use rand::Rng;

/// Fraction of one period covered by exactly `k` grown intervals, by sweeping interval endpoints.
fn swept_density(seq: &PeriodicSequence1D, k: usize, t: f64) -> f64 {
    let p = seq.period();
    let mut events: Vec<(f64, i32)> = Vec::new();
    let reach = ((t + seq.radii().iter().cloned().fold(0.0, f64::max)) / p).ceil() as i64 + 1;
    for (c, r) in seq.centres().iter().zip(seq.radii()) {
        for n in -reach..=reach {
            let (lo, hi) = (c - r - t + n as f64 * p, c + r + t + n as f64 * p);
            if hi < 0.0 || lo > p {
                continue;
            }
            events.push((lo.max(0.0), 1));
            events.push((hi.min(p), -1));
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut depth = 0i32;
    let mut last = 0.0;
    let mut total = 0.0;
    for (x, delta) in events {
        if depth as usize == k {
            total += x - last;
        }
        depth += delta;
        last = x;
    }
    if depth as usize == k {
        total += p - last;
    }
    total / p
}

fn corners_close(f: &PiecewiseLinear, expected: &[(f64, f64)], tol: f64) -> bool {
    f.corners().len() == expected.len()
        && f.corners().iter().zip(expected).all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
}

fn three_points() -> PeriodicSequence1D {
    PeriodicSequence1D::points(1.0, vec![0.0, 1.0 / 3.0, 0.5]).unwrap()
}

fn three_intervals() -> PeriodicSequence1D {
    PeriodicSequence1D::new(1.0, vec![0.0, 1.0 / 3.0, 0.5], vec![1.0 / 12.0, 0.0, 1.0 / 12.0]).unwrap()
}

fn s15() -> PeriodicSequence1D {
    PeriodicSequence1D::points(15.0, vec![0.0, 1.0, 3.0, 4.0, 5.0, 7.0, 9.0, 10.0, 12.0]).unwrap()
}

fn q15() -> PeriodicSequence1D {
    PeriodicSequence1D::points(15.0, vec![0.0, 1.0, 3.0, 4.0, 6.0, 8.0, 9.0, 12.0, 14.0]).unwrap()
}

fn random_sequence<R: Rng>(rng: &mut R, with_radii: bool) -> PeriodicSequence1D {
    loop {
        let m = rng.gen_range(1..6);
        let period = rng.gen_range(0.5..3.0);
        let centres: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..period)).collect();
        let radii: Vec<f64> = (0..m).map(|_| if with_radii { rng.gen_range(0.0..0.1 * period / m as f64) } else { 0.0 }).collect();
        if let Ok(s) = PeriodicSequence1D::new(period, centres, radii) {
            let mut sorted = s.centres().to_vec();
            sorted.push(sorted[0] + period);
            if sorted.windows(2).all(|w| w[1] - w[0] > 0.3 * period / m as f64) {
                return s;
            }
        }
    }
}

#[test]
fn zeroth_density_corners() {
    let f = psi(&three_points(), 0).unwrap();
    assert!(corners_close(&f, &[(0.0, 1.0), (1.0 / 12.0, 0.5), (1.0 / 6.0, 1.0 / 6.0), (0.25, 0.0)], 1e-12), "{f:?}");
    let g = psi(&three_intervals(), 0).unwrap();
    assert!(corners_close(&g, &[(0.0, 2.0 / 3.0), (1.0 / 24.0, 5.0 / 12.0), (1.0 / 8.0, 1.0 / 12.0), (1.0 / 6.0, 0.0)], 1e-12), "{g:?}");
}

#[test]
fn first_and_second_densities_of_three_points() {
    // Trapezia of the red point and of the green-blue pair, summed over all three.
    let psi1 = psi(&three_points(), 1).unwrap();
    for t in [0.05, 1.0 / 6.0, 0.2, 0.25, 0.3, 5.0 / 12.0] {
        assert!((psi1.eval(t) - swept_density(&three_points(), 1, t)).abs() < 1e-12);
    }
    let psi2 = psi(&three_points(), 2).unwrap();
    assert!(psi2.eval(1.0 / 12.0).abs() < 1e-12);
    assert!((psi2.eval(0.5) - swept_density(&three_points(), 2, 0.5)).abs() < 1e-12);
}

#[test]
fn second_density_of_three_intervals() {
    let psi2 = psi(&three_intervals(), 2).unwrap();
    let expected = |t: f64| -> f64 {
        let gb = PiecewiseLinear::new(vec![(1.0 / 24.0, 0.0), (1.0 / 6.0, 0.25), (7.0 / 24.0, 0.25), (5.0 / 12.0, 0.0)]).unwrap();
        let br = PiecewiseLinear::new(vec![(1.0 / 6.0, 0.0), (7.0 / 24.0, 0.25), (3.0 / 8.0, 0.25), (0.5, 0.0)]).unwrap();
        let rg = PiecewiseLinear::new(vec![(1.0 / 8.0, 0.0), (1.0 / 6.0, 1.0 / 12.0), (3.0 / 8.0, 1.0 / 12.0), (5.0 / 12.0, 0.0)]).unwrap();
        gb.eval(t) + br.eval(t) + rg.eval(t)
    };
    for i in 0..=60 {
        let t = i as f64 / 100.0;
        assert!((psi2.eval(t) - expected(t)).abs() < 1e-12, "t={t}");
    }
}

#[test]
fn closed_forms_match_sweep() {
    let mut rng = common::rng(61);
    for trial in 0..150 {
        let seq = random_sequence(&mut rng, trial % 2 == 1);
        let m = seq.len();
        for k in 0..=(2 * m + 1) {
            let f = psi(&seq, k).unwrap();
            for _ in 0..20 {
                let t = rng.gen_range(0.0..(k as f64 + 2.0) * seq.period() / 2.0);
                let swept = swept_density(&seq, k, t);
                assert!((f.eval(t) - swept).abs() < 1e-9, "k={k} t={t} {seq:?}: {} vs {swept}", f.eval(t));
            }
        }
    }
}

#[test]
fn densities_partition_the_cell() {
    let mut rng = common::rng(62);
    for _ in 0..50 {
        let with_radii = rng.gen_bool(0.5);
        let seq = random_sequence(&mut rng, with_radii);
        let t = rng.gen_range(0.0..seq.period());
        let max_k = 2 * seq.len() * (2 + (t / seq.period()) as usize) + 4;
        let total: f64 = (0..=max_k).map(|k| psi(&seq, k).unwrap().eval(t)).sum();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }
}

#[test]
fn periodicity_and_symmetry() {
    let mut rng = common::rng(63);
    for _ in 0..50 {
        let with_radii = rng.gen_bool(0.5);
        let seq = random_sequence(&mut rng, with_radii);
        let (m, p) = (seq.len(), seq.period());
        for k in 0..=m {
            let (a, b) = (psi(&seq, k).unwrap(), psi(&seq, k + m).unwrap());
            let mirror = psi(&seq, m.saturating_sub(k)).unwrap();
            for _ in 0..10 {
                let t = rng.gen_range(0.0..p);
                assert!((b.eval(t + 0.5 * p) - a.eval(t)).abs() < 1e-9);
                if !with_radii && k <= m / 2 && t <= 0.5 * p {
                    assert!((mirror.eval(0.5 * p - t) - a.eval(t)).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn zeroth_density_ignores_gap_order() {
    let mut rng = common::rng(64);
    for _ in 0..50 {
        let m = rng.gen_range(2..7);
        let gaps: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
        let mut shuffled = gaps.clone();
        for i in (1..m).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let build = |g: &[f64]| {
            let period: f64 = g.iter().sum();
            let centres: Vec<f64> = g.iter().scan(0.0, |acc, x| {
                let c = *acc;
                *acc += x;
                Some(c)
            })
            .collect();
            PeriodicSequence1D::points(period, centres).unwrap()
        };
        let (a, b) = (psi(&build(&gaps), 0).unwrap(), psi(&build(&shuffled), 0).unwrap());
        assert!(a.max_difference(&b) < 1e-12);
    }
}

#[test]
fn sampled_coverage_matches_densities() {
    let mut rng = common::rng(65);
    let samples = 1_000_000;
    for _ in 0..3 {
        let with_radii = rng.gen_bool(0.5);
        let seq = random_sequence(&mut rng, with_radii);
        let p = seq.period();
        let t = rng.gen_range(0.0..0.6 * p);
        let mut counts = vec![0usize; 4 * seq.len() + 8];
        for _ in 0..samples {
            let x = rng.gen_range(0.0..p);
            let mut depth = 0;
            for (c, r) in seq.centres().iter().zip(seq.radii()) {
                let d = (x - c).rem_euclid(p);
                let reach = r + t;
                // Number of translates of this centre within reach of x.
                let lower = ((d - reach) / p).ceil() as i64;
                let upper = ((d + reach) / p).floor() as i64;
                depth += (upper - lower + 1).max(0) as usize;
            }
            if depth < counts.len() {
                counts[depth] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate() {
            let expected = psi(&seq, k).unwrap().eval(t);
            let freq = c as f64 / samples as f64;
            let sigma = (expected * (1.0 - expected) / samples as f64).sqrt().max(1.0 / samples as f64);
            assert!((freq - expected).abs() <= 3.0 * sigma + 1e-6, "k={k}: {freq} vs {expected}");
        }
    }
}

#[test]
fn areas_under_densities() {
    assert!((rho(&three_points(), 0).unwrap() - 7.0 / 72.0).abs() < 1e-12);
    for k in [1, 2] {
        assert!((rho(&three_points(), k).unwrap() - 11.0 / 72.0).abs() < 1e-12);
    }
    let z = PeriodicSequence1D::points(1.0, vec![0.0]).unwrap();
    assert!((rho(&z, 0).unwrap() - 0.25).abs() < 1e-15);
    assert!(rho(&three_intervals(), 0).is_err());
    let mut rng = common::rng(66);
    for _ in 0..50 {
        let seq = random_sequence(&mut rng, false);
        let m = seq.len();
        let mut c = seq.centres().to_vec();
        c.push(c[0] + seq.period());
        let d: Vec<f64> = c.windows(2).map(|w| (w[1] - w[0]) / seq.period()).collect();
        for k in 1..=m {
            let closed: f64 = 0.5 * (0..m).map(|i| d[(i + m - 1) % m] * d[(i + k - 1) % m]).sum::<f64>() * seq.period();
            assert!((rho(&seq, k).unwrap() - closed).abs() < 1e-9);
        }
    }
}

#[test]
fn homometric_sequences() {
    assert!(fingerprint_equal(&s15(), &q15(), 0, 1e-12).unwrap());
    let (sr, qr) = (s15().with_neighbour_radii().unwrap(), q15().with_neighbour_radii().unwrap());
    assert!(!fingerprint_equal(&sr, &qr, 4, 1e-12).unwrap());
    let shifted = PeriodicSequence1D::points(1.0, vec![0.25, 0.25 + 1.0 / 3.0, 0.75]).unwrap();
    assert!(fingerprint_equal(&three_points(), &shifted, 0, 1e-12).unwrap());
    let mirrored = PeriodicSequence1D::points(1.0, vec![0.0, 0.5, 2.0 / 3.0]).unwrap();
    assert!(fingerprint_equal(&three_points(), &mirrored, 0, 1e-12).unwrap());
    let other = PeriodicSequence1D::points(1.0, vec![0.0, 0.2, 0.5]).unwrap();
    assert!(!fingerprint_equal(&three_points(), &other, 0, 1e-12).unwrap());
}
