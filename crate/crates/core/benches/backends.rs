use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heisenberg_core::processes::generate_with;
use heisenberg_core::verify::{ito_integral_with, mc_expectation_with, ProcessElement};
use heisenberg_core::{Backend, PolyExpElement, TimeChange, TimeGrid, VarianceParam};
use num_complex::Complex64;

fn backends() -> Vec<Backend> {
    let mut v = vec![Backend::Sequential];
    #[cfg(feature = "parallel")]
    v.push(Backend::Parallel);
    v
}

fn bench_generate(c: &mut Criterion) {
    let grid = TimeGrid::uniform(1.0, 256).unwrap();
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    for b in backends() {
        group.bench_with_input(BenchmarkId::new(b.name(), "N=4000,M=256"), &b, |bench, &b| {
            bench.iter(|| generate_with(b, &TimeChange::Identity, &grid, 4000, 1).unwrap())
        });
    }
    group.finish();
}

fn bench_ito(c: &mut Criterion) {
    let grid = TimeGrid::uniform(1.0, 256).unwrap();
    let ens = generate_with(Backend::default(), &TimeChange::Identity, &grid, 4000, 1).unwrap();
    let z = ProcessElement::fixed(
        PolyExpElement::exponential(Complex64::new(0.5, 0.5), VarianceParam::new(1.0).unwrap()).unwrap().apply_x(),
    );
    let mut group = c.benchmark_group("ito_integral");
    group.sample_size(10);
    for b in backends() {
        group.bench_with_input(BenchmarkId::new(b.name(), "x*E(0.5+0.5i)"), &b, |bench, &b| {
            bench.iter(|| ito_integral_with(b, &z, &ens).unwrap())
        });
    }
    group.finish();
}

fn bench_expectation(c: &mut Criterion) {
    let grid = TimeGrid::uniform(1.0, 1).unwrap();
    let ens = generate_with(Backend::default(), &TimeChange::Identity, &grid, 200_000, 1).unwrap();
    let f = ProcessElement::fixed(
        PolyExpElement::exponential(Complex64::new(1.0, 0.0), VarianceParam::new(1.0).unwrap()).unwrap(),
    );
    let mut group = c.benchmark_group("mc_expectation");
    group.sample_size(10);
    for b in backends() {
        group.bench_with_input(BenchmarkId::new(b.name(), "N=200000"), &b, |bench, &b| {
            bench.iter(|| mc_expectation_with(b, &f, 1.0, &ens).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generate, bench_ito, bench_expectation);
criterion_main!(benches);
