use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use purecomp_core::verify::{verify, VerifyConfig};
use purecomp_core::Ring;

fn workload() -> bool {
    let ring = Ring::zmod(12).unwrap();
    verify(&ring, &VerifyConfig::new(48)).unwrap().passed
}

#[cfg(feature = "parallel")]
fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_z12_48");
    g.sample_size(10);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    g.bench_function("rayon_1_thread", |b| b.iter(|| one.install(|| black_box(workload()))));
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    let label = format!("rayon_{}_threads", all.current_num_threads());
    g.bench_function(label, |b| b.iter(|| all.install(|| black_box(workload()))));
    g.finish();
}

/// Built with `--no-default-features`: plain iterators, no thread pool.
#[cfg(not(feature = "parallel"))]
fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_z12_48");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| black_box(workload())));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
