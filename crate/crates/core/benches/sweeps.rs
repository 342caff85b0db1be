use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use invset::exactmath::describe::pythagorean_solutions_with;
use invset::par::Execution;
use invset::sweep::{amplitude_law_sweep, two_qubit_sweep};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("amplitude_law_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 8), &8, |b, &n| {
            b.iter(|| assert!(amplitude_law_sweep(n, exec).unwrap().passed()))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("two_qubit_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 6), &6, |b, &n| {
            b.iter(|| assert!(two_qubit_sweep(n, exec).unwrap().passed()))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("pythagorean_scan");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 20), &20, |b, &k| {
            b.iter(|| pythagorean_solutions_with(k, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
