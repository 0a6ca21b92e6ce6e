use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use radix_bench::fixture_specs;
use radix_core::ring_of_integers;
use radix_core::verify::{certify_with_budget, round2_with_budget};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("ring_of_integers");
    for spec in fixture_specs() {
        let id = format!("{}_{}", spec.n(), spec.input_a());
        group.bench_with_input(BenchmarkId::from_parameter(id), &spec, |b, s| {
            b.iter(|| ring_of_integers(s).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("round2");
    group.sample_size(10);
    for spec in fixture_specs() {
        let id = format!("{}_{}", spec.n(), spec.input_a());
        group.bench_with_input(BenchmarkId::from_parameter(id), &spec, |b, s| {
            b.iter(|| round2_with_budget(s, 32).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_no_oracle");
    for spec in fixture_specs() {
        let id = format!("{}_{}", spec.n(), spec.input_a());
        let result = ring_of_integers(&spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(id), &result, |b, r| {
            b.iter(|| certify_with_budget(r, 0))
        });
    }
    group.finish();
}

criterion_group!(benches, construction, oracle, certificate);
criterion_main!(benches);
