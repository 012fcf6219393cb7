//! Sequential versus rayon fan-out over a batch of row reductions.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laurent_rows::batch::{map_sequential, par_map};
use laurent_rows::row::{gen_example, weierstrass_reduce, RowBundle};
use laurent_rows::LocalBase;

fn bundles(count: u64) -> Vec<RowBundle> {
    let bases = [LocalBase::Rationals, LocalBase::PrimeField(5), LocalBase::LocalizedAt(3)];
    (0..count)
        .map(|seed| gen_example(2, bases[seed as usize % 3], seed, 4).unwrap().0)
        .collect()
}

fn reduce_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_batch");
    group.sample_size(10);
    for count in [8u64, 32] {
        let input = bundles(count);
        let work = |b: &RowBundle| weierstrass_reduce(b, 64).unwrap().k;
        group.bench_with_input(BenchmarkId::new("sequential", count), &input, |bench, xs| {
            bench.iter(|| map_sequential(xs, work))
        });
        group.bench_with_input(BenchmarkId::new("parallel", count), &input, |bench, xs| {
            bench.iter(|| par_map(xs, work))
        });
    }
    group.finish();
}

criterion_group!(benches, reduce_batch);
criterion_main!(benches);
