use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use polar_bench::{planted, seed, test_vector};
use polar_core::{fast_sweep, smallest_eigpair, LocalPolar, SolverConfig};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    for n in [5_000, 20_000, 80_000] {
        let s = planted(n, 1);
        let x = test_vector(s.graph.node_count());
        group.throughput(Throughput::Elements(s.graph.edge_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| fast_sweep(&s.graph, black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("smallest_eigpair");
    group.sample_size(10);
    for n in [2_000, 8_000] {
        let s = planted(n, 2);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| smallest_eigpair(black_box(&s.graph), 1e-8).unwrap())
        });
    }
    group.finish();
}

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("localpolar_solve");
    group.sample_size(10);
    for n in [2_000, 8_000] {
        let s = planted(n, 3);
        let solver = LocalPolar::new(&s.graph, SolverConfig::default()).unwrap();
        let sv = seed(&s);
        for kappa in [0.5, 0.9] {
            group.bench_function(BenchmarkId::new(format!("kappa={kappa}"), n), |b| {
                b.iter(|| solver.solve(black_box(&sv), kappa).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweep, eigen, solve);
criterion_main!(benches);
