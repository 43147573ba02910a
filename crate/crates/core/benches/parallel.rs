//! Parallel vs sequential batch verdicts.
//!
//! `batch_verdicts` fans out over rayon when the default `parallel` feature
//! is on; `batch_verdicts_sequential` is the single-threaded baseline with
//! identical output. The groups sweep batch size and qubit count so the
//! crossover where thread overhead is amortized is visible in the report.

use bosonic_sep::batch::{batch_verdicts, batch_verdicts_sequential};
use bosonic_sep::gds::ChiVector;
use bosonic_sep::generate::{generate, GenerateKind};
use bosonic_sep::numerics::ToleranceProfile;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

fn mixed_batch(n_qubits: usize, len: usize) -> Vec<ChiVector> {
    let kinds = [
        GenerateKind::Separable,
        GenerateKind::Entangled,
        GenerateKind::Boundary,
    ];
    (0..len)
        .map(|i| {
            generate(kinds[i % kinds.len()], n_qubits, 0xbe9c_0000 + i as u64)
                .expect("seeded instances are valid")
        })
        .collect()
}

fn bench_batch_sizes(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let mut group = c.benchmark_group("batch_verdicts/n_qubits=8");
    for len in [16usize, 64, 256, 1024] {
        let inputs = mixed_batch(8, len);
        group.throughput(Throughput::Elements(len as u64));
        group.bench_with_input(BenchmarkId::new("parallel", len), &inputs, |b, inputs| {
            b.iter(|| black_box(batch_verdicts(black_box(inputs), &tol)));
        });
        group.bench_with_input(BenchmarkId::new("sequential", len), &inputs, |b, inputs| {
            b.iter(|| black_box(batch_verdicts_sequential(black_box(inputs), &tol)));
        });
    }
    group.finish();
}

fn bench_qubit_counts(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let mut group = c.benchmark_group("batch_verdicts/len=256");
    for n_qubits in [4usize, 8, 12] {
        let inputs = mixed_batch(n_qubits, 256);
        group.throughput(Throughput::Elements(256));
        group.bench_with_input(
            BenchmarkId::new("parallel", n_qubits),
            &inputs,
            |b, inputs| {
                b.iter(|| black_box(batch_verdicts(black_box(inputs), &tol)));
            },
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", n_qubits),
            &inputs,
            |b, inputs| {
                b.iter(|| black_box(batch_verdicts_sequential(black_box(inputs), &tol)));
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_batch_sizes, bench_qubit_counts);
criterion_main!(benches);
