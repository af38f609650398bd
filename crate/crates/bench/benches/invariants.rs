use criterion::{black_box, criterion_group, criterion_main, Criterion};
use geoinv::backbone::bri;
use geoinv::clouds::pdd;
use geoinv::numcore::Exponent;
use geoinv::periodic::{amd, pda_dist};
use geoinv::seq1p::{seq_metric, Equivalence, Group};
use geoinv::simplexwise::sdd;
use geoinv_bench::{chain, cloud, crystal, sequence};

fn invariants(c: &mut Criterion) {
    let p = cloud(200, 3, 3);
    c.bench_function("cloud_pdd_200_k10", |b| b.iter(|| pdd(black_box(&p), 10, 1e-9).unwrap()));
    let small = cloud(12, 3, 4);
    c.bench_function("sdd_12_h2", |b| b.iter(|| sdd(black_box(&small), 2).unwrap()));
    let (x, y) = (crystal(8, 5), crystal(8, 6));
    c.bench_function("periodic_amd_k100", |b| b.iter(|| amd(black_box(&x), 100).unwrap()));
    c.bench_function("periodic_pda_dist_k50", |b| b.iter(|| pda_dist(black_box(&x), &y, 50, Exponent::Infinity).unwrap()));
    let (s, t) = (sequence(60, 7), sequence(40, 8));
    c.bench_function("seq_metric_dihedral_lcm120", |b| {
        b.iter(|| seq_metric(black_box(&s), &t, Exponent::Infinity, Group::Dihedral, Equivalence::Rigid).unwrap())
    });
    let chain = chain(500, 9);
    c.bench_function("bri_500", |b| b.iter(|| bri(black_box(&chain))));
}

criterion_group!(benches, invariants);
criterion_main!(benches);
