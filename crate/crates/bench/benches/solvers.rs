use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ssg_bench::{non_stopping_suite, suite, Family};
use ssg_core::{beta_stopping, build_lp_max_free, build_lp_min_free, simplex_solve, solve, Method};

fn solve_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for n in [6, 10, 14] {
        let stopping = suite(Family::Stopping, n, 8, 100);
        for method in [Method::Hk, Method::Vi, Method::Auto] {
            group.bench_with_input(BenchmarkId::new(method.name(), n), &stopping, |b, games| {
                b.iter(|| games.iter().map(|g| solve(g, method).unwrap().iterations).sum::<usize>())
            });
        }
        let avg_free = suite(Family::AvgFree, n, 8, 200);
        group.bench_with_input(BenchmarkId::new("avg-free", n), &avg_free, |b, games| {
            b.iter(|| games.iter().map(|g| solve(g, Method::AvgFree).unwrap().iterations).sum::<usize>())
        });
        let max_only = suite(Family::MaxOnly, n, 8, 300);
        group.bench_with_input(BenchmarkId::new("lp", n), &max_only, |b, games| {
            b.iter(|| games.iter().map(|g| solve(g, Method::Lp).unwrap().iterations).sum::<usize>())
        });
    }
    let small = suite(Family::Stopping, 6, 8, 400);
    group.bench_function("oracle/6", |b| {
        b.iter(|| small.iter().map(|g| solve(g, Method::Oracle).unwrap().iterations).sum::<usize>())
    });
    group.finish();
}

fn transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform");
    group.sample_size(10);
    let games = non_stopping_suite(5, 4, 500);
    group.bench_function("build/5", |b| {
        b.iter(|| games.iter().map(|g| beta_stopping(g, 9).unwrap().0.n()).sum::<usize>())
    });
    group.bench_function("hk-transform/5", |b| {
        b.iter(|| games.iter().map(|g| solve(g, Method::Hk).unwrap().iterations).sum::<usize>())
    });
    group.finish();
}

fn simplex(c: &mut Criterion) {
    let mut group = c.benchmark_group("simplex");
    for n in [8, 16] {
        let min_free: Vec<_> = suite(Family::MaxOnly, n, 8, 600).iter().map(|g| build_lp_min_free(g).unwrap()).collect();
        let max_free: Vec<_> = suite(Family::MinOnly, n, 8, 700).iter().map(|g| build_lp_max_free(g).unwrap()).collect();
        for (name, lps) in [("min-free", &min_free), ("max-free", &max_free)] {
            group.bench_with_input(BenchmarkId::new(name, n), lps, |b, lps| {
                b.iter(|| lps.iter().map(|lp| simplex_solve(lp).unwrap().pivots).sum::<usize>())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, solve_methods, transform, simplex);
criterion_main!(benches);
