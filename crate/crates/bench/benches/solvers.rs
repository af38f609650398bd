use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use geoinv::numcore::{bottleneck, emd_cost, lac, Exponent};
use geoinv_bench::{cloud, costs, uniform};

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    for n in [10, 50, 100] {
        let m = costs(n, n as u64);
        let w = uniform(n);
        group.bench_with_input(BenchmarkId::new("emd", n), &n, |b, _| b.iter(|| emd_cost(black_box(&w), &w, &m).unwrap()));
        group.bench_with_input(BenchmarkId::new("lac", n), &n, |b, _| b.iter(|| lac(black_box(&m)).unwrap()));
        let (p, q) = (cloud(n, 3, 1), cloud(n, 3, 2));
        group.bench_with_input(BenchmarkId::new("bottleneck", n), &n, |b, _| {
            b.iter(|| bottleneck(black_box(p.points()), q.points(), Exponent::Infinity).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solvers);
criterion_main!(benches);
