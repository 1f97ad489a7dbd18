use cisnim::{solve, solve_box, ForbiddenSet, Position};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn f110() -> ForbiddenSet {
    std::iter::once(Position::new(1, 1, 0)).collect()
}

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    for n in [250u32, 500, 1000, 2000] {
        g.bench_with_input(BenchmarkId::new("nim-110", n), &n, |b, &n| {
            b.iter(|| solve(n, &f110()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("nim", n), &n, |b, &n| {
            b.iter(|| solve(n, &ForbiddenSet::new()).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_box");
    g.sample_size(10);
    for bound in [16u32, 24, 32] {
        g.bench_with_input(BenchmarkId::new("nim-110", bound), &bound, |b, &bound| {
            b.iter(|| solve_box(bound, &f110()).unwrap())
        });
    }
    g.finish();
}

fn pi(c: &mut Criterion) {
    let t = solve(4096, &ForbiddenSet::new()).unwrap();
    c.bench_function("pi_prefix/nim/4096", |b| {
        b.iter(|| t.pi_prefix(4096).unwrap())
    });
}

criterion_group!(benches, sieve, oracle, pi);
criterion_main!(benches);
