//! Sequential versus data-parallel sweeps. The sequential side runs the same
//! code on a one-thread pool, so only scheduling differs.

use criterion::{criterion_group, criterion_main, Criterion};
use hcstem::classify::{audit_all, enumerate_hc_spaces};
use hcstem::roots::{Family, SimpleType};
use hcstem::selftest::selftest_type;

fn workloads(c: &mut Criterion, label: &str, run: &dyn Fn(&mut (dyn FnMut() + Send))) {
    let mut g = c.benchmark_group(label);
    g.sample_size(10);
    g.bench_function("selftest E6", |b| {
        b.iter(|| run(&mut || assert!(selftest_type(SimpleType::new(Family::E, 6).unwrap()).unwrap().ok())))
    });
    g.bench_function("audit rank <= 8", |b| {
        b.iter(|| run(&mut || assert!(audit_all(8).unwrap().iter().all(|t| t.holds()))))
    });
    g.bench_function("enumerate dim <= 64", |b| b.iter(|| run(&mut || assert!(!enumerate_hc_spaces(64).is_empty()))));
    g.finish();
}

#[cfg(feature = "parallel")]
fn sweeps(c: &mut Criterion) {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    workloads(c, "sequential", &|f| one.install(f));
    workloads(c, "parallel", &|f| f());
}

#[cfg(not(feature = "parallel"))]
fn sweeps(c: &mut Criterion) {
    workloads(c, "sequential", &|f| f());
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
