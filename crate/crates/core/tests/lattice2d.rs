mod common;

use geoinv::lattice2d::{
    basis_invariant, inverse_design, pc, pm, projected_invariant, rc, reduce, rm, root_invariant, slm, Basis2D,
    PointGroup, ProjectedInvariant2D, RootInvariant2D, INCENTRE,
};
use geoinv::Exponent;
use rand::Rng;

const R2: f64 = std::f64::consts::SQRT_2;

fn designed(x: f64, y: f64, size: f64, sign: i8) -> RootInvariant2D {
    basis_invariant(&inverse_design(x, y, size, sign).unwrap()).unwrap()
}

fn square() -> RootInvariant2D {
    designed(0.0, 0.0, 2.0, 0)
}
fn hexagonal() -> RootInvariant2D {
    designed(0.0, 1.0, 3.0, 0)
}
fn centred() -> RootInvariant2D {
    designed(0.5, 0.5, 6.0, 0)
}
fn chebyshev(sign: i8) -> RootInvariant2D {
    designed(0.25, 0.25, 12.0, sign)
}
fn euclidean(sign: i8) -> RootInvariant2D {
    designed(INCENTRE, INCENTRE, 6.0, sign)
}

fn projected(ri: &RootInvariant2D) -> ProjectedInvariant2D {
    projected_invariant(ri).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9
}

#[test]
fn designed_root_invariants() {
    let cases = [
        (square(), [0.0, 1.0, 1.0], 0),
        (hexagonal(), [1.0, 1.0, 1.0], 0),
        (centred(), [1.0, 1.0, 4.0], 0),
        (chebyshev(1), [1.0, 4.0, 7.0], 1),
        (chebyshev(-1), [1.0, 4.0, 7.0], -1),
        (euclidean(1), [2.0 - R2, 2.0 * R2 - 1.0, 5.0 - R2], 1),
    ];
    for (ri, triple, sign) in cases {
        for (a, b) in ri.triple().iter().zip(triple) {
            assert!(close(*a, b), "{ri:?}");
        }
        assert_eq!(ri.sign(), sign);
    }
    let pi = projected(&chebyshev(1));
    assert!(close(pi.x, 0.25) && close(pi.y, 0.25));
    let pi = projected(&hexagonal());
    assert!(close(pi.x, 0.0) && close(pi.y, 1.0));
}

#[test]
fn hexagonal_and_centred_superbases() {
    let hex = reduce(&Basis2D::new([R2, 0.0], [-1.0 / R2, 3f64.sqrt() / R2]).unwrap()).unwrap();
    for p in hex.conorms() {
        assert!(close(p, 1.0));
    }
    let b = inverse_design(0.0, 1.0, 3.0, 0).unwrap();
    for v in reduce(&b).unwrap().vonorms() {
        assert!(close(v, 2.0));
    }
    let b = inverse_design(0.5, 0.5, 6.0, 0).unwrap();
    let mut v = reduce(&b).unwrap().vonorms();
    v.sort_by(f64::total_cmp);
    assert!(close(v[0], 2.0) && close(v[1], 17.0) && close(v[2], 17.0));
    let cos = (b.v1[0] * b.v2[0] + b.v1[1] * b.v2[1]) / (2f64.sqrt() * 17f64.sqrt());
    assert!(close(cos, -1.0 / 34f64.sqrt()));
}

#[test]
fn sheared_bases_of_one_lattice_agree() {
    let a = basis_invariant(&Basis2D::new([1.0, 0.0], [0.9, 1.0]).unwrap()).unwrap();
    let b = basis_invariant(&Basis2D::new([1.0, 0.0], [-0.1, 1.0]).unwrap()).unwrap();
    for (x, y) in a.triple().iter().zip(b.triple()) {
        assert!(close(*x, y));
    }
    assert_eq!(a.sign(), b.sign());
}

#[test]
fn chebyshev_root_and_projected_tables() {
    let lattices = [square(), hexagonal(), centred(), chebyshev(1)];
    let rm_table = [[0.0, 1.0, 3.0, 6.0], [1.0, 0.0, 3.0, 6.0], [3.0, 3.0, 0.0, 3.0], [6.0, 6.0, 3.0, 0.0]];
    let pm_table = [[0.0, 1.0, 0.5, 0.25], [1.0, 0.0, 0.5, 0.75], [0.5, 0.5, 0.0, 0.25], [0.25, 0.75, 0.25, 0.0]];
    for i in 0..4 {
        for j in 0..4 {
            let r = rm(&lattices[i], &lattices[j], Exponent::Infinity, false).unwrap();
            let p = pm(&projected(&lattices[i]), &projected(&lattices[j]), Exponent::Infinity, false).unwrap();
            assert!(close(r, rm_table[i][j]), "RM[{i}][{j}] = {r}");
            assert!(close(p, pm_table[i][j]), "PM[{i}][{j}] = {p}");
        }
    }
}

#[test]
fn finite_exponent_root_table() {
    for q in [1.0, 1.5, 2.0, 3.0] {
        let e = Exponent::Finite(q);
        let got = rm(&square(), &chebyshev(-1), e, false).unwrap();
        assert!(close(got, (1.0 + 3f64.powf(q) + 6f64.powf(q)).powf(1.0 / q)));
        let got = pm(&projected(&hexagonal()), &projected(&chebyshev(1)), e, false).unwrap();
        assert!(close(got, 0.25 * (1.0 + 3f64.powf(q)).powf(1.0 / q)));
    }
}

fn oriented_tables() -> Vec<(Exponent, bool, [f64; 4])> {
    // Entries: same-sign Chebyshev/Euclidean, opposite-sign Chebyshev/Euclidean, Chebyshev mirror pair, Euclidean mirror pair.
    vec![
        (Exponent::TWO, false, [0.75 * R2 - 1.0, (25.0 - 16.0 * R2).sqrt() / (2.0 * R2), 0.5, 2.0 - R2]),
        (Exponent::Infinity, false, [0.75 - 1.0 / R2, 1.25 - 1.0 / R2, 0.5, 2.0 - R2]),
        (Exponent::TWO, true, [(6.0 * (7.0 - 3.0 * R2)).sqrt(), (50.0 - 22.0 * R2).sqrt(), 2.0, 2.0 * (2.0 - R2)]),
        (Exponent::Infinity, true, [2.0 + R2, 3.0, 2.0, 2.0 * (2.0 - R2)]),
    ]
}

#[test]
fn oriented_tables_for_mirror_pairs() {
    let lattices = [chebyshev(1), chebyshev(-1), euclidean(1), euclidean(-1)];
    for (q, root, [same, opposite, cheb_pair, eucl_pair]) in oriented_tables() {
        let expected = [
            [0.0, cheb_pair, same, opposite],
            [cheb_pair, 0.0, opposite, same],
            [same, opposite, 0.0, eucl_pair],
            [opposite, same, eucl_pair, 0.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let d = if root {
                    rm(&lattices[i], &lattices[j], q, true).unwrap()
                } else {
                    pm(&projected(&lattices[i]), &projected(&lattices[j]), q, true).unwrap()
                };
                assert!(close(d, expected[i][j]), "q={q} root={root} [{i}][{j}]: {d} vs {}", expected[i][j]);
            }
        }
    }
}

#[test]
fn chiral_table() {
    let g = |s: &str| s.parse::<PointGroup>().unwrap();
    let two = Exponent::TWO;
    let inf = Exponent::Infinity;
    let (lc, le) = (chebyshev(1), euclidean(1));
    let (pc_c, pc_e) = (projected(&lc), projected(&le));
    let projected_rows = [
        (g("D2"), two, 0.25, 1.0 / (2.0 + R2)),
        (g("D4"), two, R2 / 4.0, R2 - 1.0),
        (g("D6"), two, 10f64.sqrt() / 4.0, (2.0 - R2).sqrt()),
        (g("D2"), inf, 0.25, 0.5 * (R2 - 1.0)),
        (g("D4"), inf, 0.25, 1.0 / (2.0 + R2)),
        (g("D6"), inf, 0.75, 1.0 / R2),
    ];
    for (group, q, a, b) in projected_rows {
        assert!(close(pc(&pc_c, group, q).unwrap(), a), "{group:?} {q}");
        assert!(close(pc(&pc_e, group, q).unwrap(), b), "{group:?} {q}");
    }
    let root_rows = [
        (g("D2"), two, 1.0, 2.0 - R2),
        (g("D4"), two, 13f64.sqrt() / 2.0, (2.0 - R2) * 13f64.sqrt() / 2.0),
        (g("D6"), two, 3.0 * R2, (30.0 - 18.0 * R2).sqrt()),
        (g("D2"), inf, 1.0, 2.0 - R2),
        (g("D4"), inf, 1.0, 2.0 - R2),
        (g("D6"), inf, 3.0, 1.5),
    ];
    for (group, q, a, b) in root_rows {
        assert!(close(rc(&lc, group, q).unwrap(), a), "{group:?} {q}");
        assert!(close(rc(&le, group, q).unwrap(), b), "{group:?} {q}");
    }
    let hex = RootInvariant2D::new(2.0, 2.0, 2.0, 0).unwrap();
    assert_eq!(rc(&hex, PointGroup::D6, two).unwrap(), 0.0);
    assert_eq!(rc(&hex, PointGroup::D6, inf).unwrap(), 0.0);
    assert!(rc(&hex, PointGroup::D2, Exponent::ONE).is_err());
}

#[test]
fn spherical_map_landmarks() {
    let t = INCENTRE;
    let lon = |x: f64, y: f64| slm(&ProjectedInvariant2D::new(x, y, 0).unwrap()).longitude.degrees().unwrap();
    assert!((lon(0.0, 0.0) - 67.5).abs() < 1e-9);
    assert!((lon(0.0, 1.0) + 45.0).abs() < 1e-9);
    assert!((lon(t, 0.0) - 112.5).abs() < 1e-9);
    assert!((lon(0.5, 0.5) + 112.5).abs() < 1e-9);
    assert!(lon(0.0, R2 - 1.0).abs() < 1e-9);
    let u = 0.1;
    assert!((lon(t + u, t - u * (R2 - 1.0)) - 180.0).abs() < 1e-9);
    let pole = slm(&ProjectedInvariant2D::new(t, t, 1).unwrap());
    assert_eq!(pole.longitude.degrees(), None);
    assert!((pole.latitude - 90.0).abs() < 1e-9);
    for (x, y) in [(0.0, 0.0), (0.0, 1.0), (0.5, 0.5), (0.3, 0.0)] {
        assert_eq!(slm(&ProjectedInvariant2D::new(x, y, 0).unwrap()).latitude, 0.0);
    }
    let north = slm(&ProjectedInvariant2D::new(0.2, 0.3, 1).unwrap());
    let south = slm(&ProjectedInvariant2D::new(0.2, 0.3, -1).unwrap());
    assert!(north.latitude > 0.0 && (north.latitude + south.latitude).abs() < 1e-12);
}

fn random_qt<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let x: f64 = rng.gen_range(0.0..1.0);
        let y: f64 = rng.gen_range(0.0..=1.0);
        if x + y <= 1.0 {
            return (x, y);
        }
    }
}

#[test]
fn inverse_design_round_trip() {
    let mut rng = common::rng(41);
    for _ in 0..1000 {
        let (x, y) = random_qt(&mut rng);
        let size = rng.gen_range(0.1..50.0);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let ri = designed(x, y, size, sign);
        let pi = projected(&ri);
        assert!((pi.x - x).abs() < 1e-9 && (pi.y - y).abs() < 1e-9);
        assert!((ri.size() - size).abs() < 1e-9 * size.max(1.0));
        assert!(ri.sign() == sign || ri.sign() == 0);
    }
}

fn random_basis<R: Rng>(rng: &mut R) -> Basis2D {
    loop {
        let v1 = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        let v2 = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        if let Ok(b) = Basis2D::new(v1, v2) {
            if b.area().abs() > 0.5 {
                return b;
            }
        }
    }
}

#[test]
fn invariants_ignore_the_basis_choice() {
    let mut rng = common::rng(42);
    for _ in 0..300 {
        let b = random_basis(&mut rng);
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..rng.gen_range(1..6) {
            let k = rng.gen_range(-3..=3);
            m = if rng.gen_bool(0.5) {
                [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]]
            } else {
                [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]]
            };
        }
        let combine = |row: [i64; 2]| [row[0] as f64 * b.v1[0] + row[1] as f64 * b.v2[0], row[0] as f64 * b.v1[1] + row[1] as f64 * b.v2[1]];
        let other = Basis2D::new(combine(m[0]), combine(m[1])).unwrap();
        let (a, c) = (basis_invariant(&b).unwrap(), basis_invariant(&other).unwrap());
        assert!(rm(&a, &c, Exponent::Infinity, true).unwrap() < 1e-9);
        assert_eq!(a.sign(), c.sign());

        let mirror = Basis2D::new([b.v1[0], -b.v1[1]], [b.v2[0], -b.v2[1]]).unwrap();
        let r = basis_invariant(&mirror).unwrap();
        assert!(rm(&a, &r, Exponent::Infinity, false).unwrap() < 1e-9);
        assert_eq!(r.sign(), -a.sign());
    }
}

#[test]
fn mirror_pairs_are_twice_the_chiral_distance() {
    let mut rng = common::rng(43);
    for _ in 0..300 {
        let (x, y) = random_qt(&mut rng);
        let ri = designed(x, y, rng.gen_range(0.5..10.0), 1);
        let pi = projected(&ri);
        for q in [Exponent::TWO, Exponent::Infinity] {
            let d = rm(&ri, &ri.mirrored(), q, true).unwrap();
            assert!((d - 2.0 * rc(&ri, PointGroup::D2, q).unwrap()).abs() < 1e-9);
            let d = pm(&pi, &pi.mirrored(), q, true).unwrap();
            let twice = 2.0 * pc(&pi, PointGroup::D2, q).unwrap();
            if q == Exponent::TWO {
                assert!((d - twice).abs() < 1e-9, "{pi:?} {d}");
            } else {
                assert!(d + 1e-9 >= twice, "{pi:?} {d}");
            }
        }
    }
}

#[test]
fn chiral_distances_are_continuous() {
    let mut rng = common::rng(44);
    for _ in 0..300 {
        let (x1, y1) = random_qt(&mut rng);
        let (x2, y2) = random_qt(&mut rng);
        let a = designed(x1, y1, rng.gen_range(0.5..5.0), 1);
        let b = designed(x2, y2, rng.gen_range(0.5..5.0), -1);
        for q in [Exponent::TWO, Exponent::Infinity] {
            let bound_r = rm(&a, &b, q, false).unwrap();
            let bound_p = pm(&projected(&a), &projected(&b), q, false).unwrap();
            for g in [PointGroup::D2, PointGroup::D4, PointGroup::D6] {
                let gap = (rc(&a, g, q).unwrap() - rc(&b, g, q).unwrap()).abs();
                assert!(gap <= bound_r + 1e-9, "{g:?} q={q}: {gap} > {bound_r}");
                let gap = (pc(&projected(&a), g, q).unwrap() - pc(&projected(&b), g, q).unwrap()).abs();
                assert!(gap <= bound_p + 1e-9, "{g:?} q={q}: {gap} > {bound_p}");
            }
        }
    }
}

#[test]
fn oriented_metrics_satisfy_axioms() {
    let mut rng = common::rng(45);
    for _ in 0..300 {
        let pts: Vec<RootInvariant2D> = (0..3)
            .map(|_| {
                let (x, y) = random_qt(&mut rng);
                designed(x, y, rng.gen_range(1.0..4.0), if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        for q in [Exponent::TWO, Exponent::Infinity] {
            let d = |i: usize, j: usize| rm(&pts[i], &pts[j], q, true).unwrap();
            let p = |i: usize, j: usize| pm(&projected(&pts[i]), &projected(&pts[j]), q, true).unwrap();
            assert!((d(0, 1) - d(1, 0)).abs() < 1e-9 && (p(0, 1) - p(1, 0)).abs() < 1e-9);
            if q == Exponent::TWO {
                assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
            }
            assert!(p(0, 2) <= p(0, 1) + p(1, 2) + 1e-9);
        }
    }
}

#[test]
fn reduction_is_continuous() {
    let mut rng = common::rng(46);
    let mut checked = 0;
    while checked < 300 {
        let sb = reduce(&random_basis(&mut rng)).unwrap();
        if sb.conorms().iter().any(|&p| p < 0.05) {
            continue;
        }
        let delta = rng.gen_range(1e-5..1e-2);
        let mut shift = || {
            let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            [0.5 * delta * a.cos(), 0.5 * delta * a.sin()]
        };
        let (d1, d2) = (shift(), shift());
        let [_, v1, v2] = sb.vectors;
        let moved = reduce(&Basis2D::new([v1[0] + d1[0], v1[1] + d1[1]], [v2[0] + d2[0], v2[1] + d2[1]]).unwrap()).unwrap();
        let l = sb.vonorms().iter().chain(moved.vonorms().iter()).fold(0.0f64, |m, v| m.max(v.sqrt()));
        let (a, b) = (root_invariant(&sb), root_invariant(&moved));
        for q in [Exponent::ONE, Exponent::TWO, Exponent::Infinity] {
            let bound = q.root(3.0) * (2.0 * l * delta).sqrt();
            assert!(rm(&a, &b, q, false).unwrap() <= bound + 1e-12);
        }
        checked += 1;
    }
}

#[test]
fn oriented_exponent_restricted() {
    let a = chebyshev(1);
    let b = chebyshev(-1);
    assert!(rm(&a, &b, Exponent::ONE, true).is_err());
    assert!(rm(&a, &b, Exponent::ONE, false).is_ok());
    assert!(pm(&projected(&a), &projected(&b), Exponent::Finite(3.0), true).is_err());
}
