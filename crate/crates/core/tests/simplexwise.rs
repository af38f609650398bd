mod common;

use geoinv::simplexwise::{
    asd, osd, scd, scd_dist, scd_with_centre, sdd, sdd_dist, sdd_from_distances, sdm, strength, Comparison,
    OrientedSimplexwise, LAMBDA_2, LAMBDA_3,
};
use geoinv::{Exponent, PointCloud};
use rand::Rng;

fn cloud(points: &[[f64; 3]]) -> PointCloud {
    PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn five_point(blue_z: f64) -> PointCloud {
    cloud(&[[-1.0, -1.0, 0.0], [1.0, 1.0, 0.0], [-2.0, 0.0, -2.0], [2.0, 0.0, 2.0], [0.0, 1.0, blue_z]])
}

fn seven_point(orange_z: f64) -> PointCloud {
    cloud(&[
        [-2.0, 0.0, -2.0],
        [2.0, 0.0, 2.0],
        [-1.0, -1.0, 0.0],
        [1.0, 1.0, 0.0],
        [-1.0, 2.0, 0.0],
        [1.0, 2.0, 0.0],
        [0.0, 0.0, orange_z],
    ])
}

/// Six points whose three planar points satisfy the equal-distance constraints to the red and green points.
fn six_point(orange_z: f64, l: [f64; 3]) -> PointCloud {
    let [l1, l2, l3] = l;
    let x1 = (l3 * l3 - l2 * l2) / 2.0;
    let x2 = (l1 * l1 - l3 * l3) / 2.0;
    let x3 = (l2 * l2 - l1 * l1) / 2.0;
    let y1 = (4.0 * l2 * l2 - (x1 - 2.0).powi(2)).sqrt();
    let y2 = (4.0 * l3 * l3 - (x2 - 2.0).powi(2)).sqrt();
    let y3 = (4.0 * l1 * l1 - (x3 - 2.0).powi(2)).sqrt();
    cloud(&[
        [-2.0, 0.0, -2.0],
        [2.0, 0.0, 2.0],
        [x1, y1, 0.0],
        [x2, -y2, 0.0],
        [x3, y3, 0.0],
        [0.0, 0.0, orange_z],
    ])
}

fn both_modes_separate(a: &PointCloud, b: &PointCloud) {
    let (x, y) = (sdd(a, 2).unwrap(), sdd(b, 2).unwrap());
    for mode in [Comparison::Emd, Comparison::Lac] {
        let d = sdd_dist(&x, &y, mode, Exponent::Infinity).unwrap();
        assert!(d > 1e-6, "{mode:?}: {d}");
        assert!(sdd_dist(&x, &x, mode, Exponent::Infinity).unwrap() < 1e-12);
    }
}

#[test]
fn five_point_pair_separated_by_pairs() {
    let (minus, plus) = (five_point(-1.0), five_point(1.0));
    assert_eq!(
        geoinv::clouds::pdd(&minus, 4, 0.0).unwrap().len(),
        geoinv::clouds::pdd(&plus, 4, 0.0).unwrap().len()
    );
    both_modes_separate(&minus, &plus);
}

#[test]
fn seven_point_pair_separated_by_pairs() {
    let (minus, plus) = (seven_point(-1.0), seven_point(1.0));
    let pm = geoinv::clouds::pdd(&minus, 6, 0.0).unwrap();
    let pp = geoinv::clouds::pdd(&plus, 6, 0.0).unwrap();
    let d = geoinv::clouds::pdd_dist(&pm, &pp, geoinv::RowMetric::default()).unwrap();
    assert!(d < 1e-12, "pointwise distributions should agree, got {d}");
    both_modes_separate(&minus, &plus);
}

#[test]
fn six_point_family_separated_by_pairs() {
    for l in [[1.5, 1.8, 2.2], [1.3, 1.9, 1.6], [2.0, 1.4, 1.7]] {
        let (minus, plus) = (six_point(-1.0, l), six_point(1.0, l));
        let dm = minus.distance_matrix();
        let dp = plus.distance_matrix();
        assert!((dm[0][2] - dm[1][3]).abs() < 1e-12);
        assert!((dp[0][4] - dp[1][2]).abs() < 1e-12);
        both_modes_separate(&minus, &plus);
    }
}

#[test]
fn trapezium_and_kite_pair_distributions_differ() {
    let t = PointCloud::new(vec![vec![-2.0, 1.0], vec![2.0, 1.0], vec![-4.0, -1.0], vec![4.0, -1.0]]).unwrap();
    let k = PointCloud::new(vec![vec![5.0, 0.0], vec![-3.0, 0.0], vec![-1.0, 2.0], vec![-1.0, -2.0]]).unwrap();
    both_modes_separate(&t, &k);
}

#[test]
fn averaged_distribution_of_right_triangle() {
    let d = vec![vec![0.0, 5.0, 4.0], vec![5.0, 0.0, 3.0], vec![4.0, 3.0, 0.0]];
    let s = sdd_from_distances(&d, 2, 0.0).unwrap();
    let mut vectors: Vec<Vec<f64>> = asd(&s).into_iter().map(|(v, _)| v).collect();
    vectors.sort_by(|a, b| a[0].total_cmp(&b[0]));
    assert_eq!(vectors, vec![vec![3.0, 4.5], vec![4.0, 4.0], vec![5.0, 3.5]]);
    let mean = sdm(&s, 1).unwrap();
    assert!((mean[0] - 4.0).abs() < 1e-12 && (mean[1] - 4.0).abs() < 1e-12);
    let second = sdm(&s, 2).unwrap();
    let expected = ((9.0 + 16.0 + 25.0) / 3.0 / 3.0f64).sqrt();
    assert!((second[0] - expected).abs() < 1e-12);
    assert!(sdm(&s, 0).is_err());
}

#[test]
fn sdd_is_isometry_invariant() {
    let mut rng = common::rng(31);
    for trial in 0..25 {
        let dim = 2 + trial % 2;
        let m = rng.gen_range(4..8);
        let h = 1 + trial % 3;
        let pts = common::random_points(&mut rng, m, dim, 3.0);
        let rot = common::random_orthogonal(&mut rng, dim, trial % 2 == 0);
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let moved = common::transform(&pts, &rot, &shift);
        let a = sdd(&PointCloud::new(pts).unwrap(), h).unwrap();
        let b = sdd(&PointCloud::new(moved).unwrap(), h).unwrap();
        for mode in [Comparison::Emd, Comparison::Lac] {
            assert!(sdd_dist(&a, &b, mode, Exponent::TWO).unwrap() < 1e-9);
        }
    }
}

#[test]
fn sdd_dist_metric_axioms() {
    let mut rng = common::rng(32);
    for _ in 0..20 {
        let clouds: Vec<_> = (0..3)
            .map(|_| sdd(&PointCloud::new(common::random_points(&mut rng, 5, 2, 2.0)).unwrap(), 2).unwrap())
            .collect();
        for mode in [Comparison::Emd, Comparison::Lac] {
            for q in [Exponent::ONE, Exponent::Infinity] {
                let d = |i: usize, j: usize| sdd_dist(&clouds[i], &clouds[j], mode, q).unwrap();
                assert!((d(0, 1) - d(1, 0)).abs() < 1e-9);
                assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
            }
        }
    }
}

#[test]
fn sdd_rejects_mismatched_orders() {
    let c = PointCloud::new(vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]]).unwrap();
    let (a, b) = (sdd(&c, 1).unwrap(), sdd(&c, 2).unwrap());
    assert!(sdd_dist(&a, &b, Comparison::Emd, Exponent::Infinity).is_err());
    assert!(sdd(&c, 4).is_err());
}

fn columns_of(s: &OrientedSimplexwise, entry: usize) -> Vec<(Vec<f64>, i8)> {
    s.entries()[entry].0.columns().iter().map(|c| (c.distances.clone(), c.sign)).collect()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

#[test]
fn square_centred_distribution() {
    let sq = PointCloud::new(vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
    let s = scd(&sq).unwrap();
    assert_eq!(s.entries().len(), 1);
    assert_eq!(s.weights(), vec![1.0]);
    assert!(close(s.entries()[0].0.base_distances(), &[1.0]));
    let mut cols = columns_of(&s, 0);
    cols.sort_by(|a, b| a.1.cmp(&b.1));
    let r2 = 2f64.sqrt();
    assert!(close(&cols[0].0, &[r2, 1.0]) && cols[0].1 == -1);
    assert!(close(&cols[1].0, &[2.0, 1.0]) && cols[1].1 == 0);
    assert!(close(&cols[2].0, &[r2, 1.0]) && cols[2].1 == 1);
}

#[test]
fn right_angled_cloud_about_origin() {
    let r = PointCloud::new(vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, 3.0]]).unwrap();
    let s = scd_with_centre(&r, &[0.0, 0.0]).unwrap();
    assert_eq!(s.entries().len(), 3);
    let expected: [(f64, [(f64, f64, i8); 2]); 3] = [
        (0.0, [(3.0, 3.0, 0), (4.0, 4.0, 0)]),
        (3.0, [(3.0, 0.0, 0), (5.0, 4.0, 1)]),
        (4.0, [(4.0, 0.0, 0), (5.0, 3.0, -1)]),
    ];
    for (i, (base, cols)) in expected.iter().enumerate() {
        let (ocd, count) = &s.entries()[i];
        assert_eq!(*count, 1);
        assert!(close(ocd.base_distances(), &[*base]));
        let got = columns_of(&s, i);
        for (g, e) in got.iter().zip(cols) {
            assert!(close(&g.0, &[e.0, e.1]), "{got:?}");
            assert_eq!(g.1, e.2, "{got:?}");
        }
    }

    let mirror = PointCloud::new(vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, -3.0]]).unwrap();
    let sm = scd_with_centre(&mirror, &[0.0, 0.0]).unwrap();
    assert_eq!(sm, s.mirror());
    assert_eq!(columns_of(&sm, 1)[1].1, -1);
    assert_eq!(columns_of(&sm, 2)[1].1, 1);
    for mode in [Comparison::Emd, Comparison::Lac] {
        assert!(scd_dist(&s, &sm, mode).unwrap() > 1e-6);
        assert!(scd_dist(&s, &s, mode).unwrap() < 1e-12);
    }
}

#[test]
fn centred_distribution_rigid_motion_and_mirror() {
    let mut rng = common::rng(33);
    for trial in 0..30 {
        let dim = 2 + trial % 2;
        let m = rng.gen_range(4..8);
        let pts = common::random_points(&mut rng, m, dim, 3.0);
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let rot = common::random_orthogonal(&mut rng, dim, false);
        let refl = common::random_orthogonal(&mut rng, dim, true);
        let base = PointCloud::new(pts.clone()).unwrap();
        let rotated = PointCloud::new(common::transform(&pts, &rot, &shift)).unwrap();
        let reflected = PointCloud::new(common::transform(&pts, &refl, &shift)).unwrap();
        for build in [scd, osd] {
            let a = build(&base).unwrap();
            let b = build(&rotated).unwrap();
            let c = build(&reflected).unwrap();
            for mode in [Comparison::Emd, Comparison::Lac] {
                assert!(scd_dist(&a, &b, mode).unwrap() < 1e-9);
                assert!(scd_dist(&a.mirror(), &c, mode).unwrap() < 1e-9);
            }
        }
    }
}

#[test]
fn centred_distribution_continuity() {
    let mut rng = common::rng(34);
    for trial in 0..40 {
        let dim = 2 + trial % 2;
        let m = rng.gen_range(4..7);
        let pts = common::random_points(&mut rng, m, dim, 3.0);
        let eps = rng.gen_range(0.001..0.2);
        let noisy = common::perturb(&mut rng, &pts, eps);
        let a = scd(&PointCloud::new(pts).unwrap()).unwrap();
        let b = scd(&PointCloud::new(noisy).unwrap()).unwrap();
        for mode in [Comparison::Emd, Comparison::Lac] {
            let d = scd_dist(&a, &b, mode).unwrap();
            assert!(d <= 2.0 * eps + 1e-9, "{d} > 2*{eps}");
        }
    }
}

#[test]
fn scd_dist_metric_axioms() {
    let mut rng = common::rng(35);
    for _ in 0..20 {
        let s: Vec<_> = (0..3)
            .map(|_| scd(&PointCloud::new(common::random_points(&mut rng, 5, 2, 2.0)).unwrap()).unwrap())
            .collect();
        for mode in [Comparison::Emd, Comparison::Lac] {
            let d = |i: usize, j: usize| scd_dist(&s[i], &s[j], mode).unwrap();
            assert!((d(0, 1) - d(1, 0)).abs() < 1e-9);
            assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
        }
    }
}

#[test]
fn strength_is_lipschitz() {
    let mut rng = common::rng(36);
    for (n, lambda) in [(2usize, LAMBDA_2), (3, LAMBDA_3)] {
        for _ in 0..300 {
            let pts = common::random_points(&mut rng, n + 1, n, 2.0);
            let eps = rng.gen_range(0.0001..0.1);
            let noisy = common::perturb(&mut rng, &pts, eps);
            let gap = (strength(&pts).unwrap() - strength(&noisy).unwrap()).abs();
            assert!(gap <= 2.0 * eps * lambda + 1e-12, "n={n}: {gap} > {}", 2.0 * eps * lambda);
        }
    }
}

#[test]
fn strength_examples() {
    assert!((strength(&[vec![0.0], vec![-2.0]]).unwrap() - 4.0).abs() < 1e-12);
    let r2 = 2f64.sqrt();
    let s = strength(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert!((s - 1.0 / (r2 * (1.0 + r2).powi(3))).abs() < 1e-12);
    assert_eq!(strength(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![5.0, 0.0]]).unwrap(), 0.0);
    assert!(strength(&[vec![0.0, 0.0], vec![1.0, 0.0]]).is_err());
}
