use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use parity_ca::debruijn::{build_debruijn, certify_pairwise_parity};
use parity_ca::impossibility::{r2_cycle_tables, r2_enumerate_candidates};
use parity_ca::{bfo, classify, survey, Configuration, StepBudget};

fn step_kernel(c: &mut Criterion) {
    let rule = bfo();
    let mut group = c.benchmark_group("step");
    for n in [19usize, 63, 257, 4097] {
        let config = Configuration::from_cells(
            &(0..n)
                .map(|i| ((i * 7 + i / 3) % 5 == 0) as u8)
                .collect::<Vec<_>>(),
        );
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &config, |b, x| {
            b.iter(|| rule.step(black_box(x)))
        });
    }
    group.finish();
}

fn classify_one(c: &mut Criterion) {
    let rule = bfo();
    let x: Configuration = "0110100010111000101".parse().unwrap();
    c.bench_function("classify/19", |b| {
        b.iter(|| classify(&rule, black_box(&x), 8 * 19 * 19))
    });
}

fn sweep(c: &mut Criterion) {
    let rule = bfo();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for n in [11usize, 15] {
        group.throughput(Throughput::Elements(1 << n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| survey(&rule, n, StepBudget::default()).unwrap())
        });
    }
    group.finish();
}

fn certify(c: &mut Criterion) {
    let rule = bfo();
    c.bench_function("certify/bfo", |b| {
        b.iter(|| certify_pairwise_parity(&build_debruijn(black_box(&rule))))
    });
}

fn radius_two(c: &mut Criterion) {
    c.bench_function("r2/cycle_tables", |b| b.iter(r2_cycle_tables));
    let mut group = c.benchmark_group("r2");
    group.sample_size(10);
    group.bench_function("enumerate", |b| {
        b.iter(|| r2_enumerate_candidates(false).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    step_kernel,
    classify_one,
    sweep,
    certify,
    radius_two
);
criterion_main!(benches);
