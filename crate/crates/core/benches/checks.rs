//! Each check on a one-thread pool against the default pool. Building with
//! `--no-default-features` swaps the rayon helpers for plain iterators, in
//! which case both rows measure the sequential path.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fibcat::category::check_category_laws;
use fibcat::externalization::{externalize, Fam};
use fibcat::fib_isbell::sigma_fibered_functor;
use fibcat::fibration::is_fibration;
use fibcat::fixtures;
use fibcat::internal::internalize;
use fibcat::spans::isbell_report;

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let name = format!("{}-threads", default.current_num_threads());
    vec![
        ("1-thread".into(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        (name, default),
    ]
}

fn checks(c: &mut Criterion) {
    let square = fixtures::all().into_iter().find(|c| c.name() == "Sq").unwrap();
    let arrow = Arc::new(internalize(&fixtures::arrow()));
    let z2 = Arc::new(internalize(&fixtures::cyclic(2)));
    let ext = externalize(arrow.clone());
    let fam = Fam::new(arrow);

    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("isbell_report/Sq", &name), &pool, |b, pool| {
            b.iter(|| pool.install(|| isbell_report(&square)))
        });
        group.bench_with_input(BenchmarkId::new("fam_laws/Arr", &name), &pool, |b, pool| {
            b.iter(|| pool.install(|| check_category_laws(&fam, "Arr", 2)))
        });
        group.bench_with_input(BenchmarkId::new("is_fibration/Arr", &name), &pool, |b, pool| {
            b.iter(|| pool.install(|| is_fibration(&ext, 2)))
        });
        group.bench_with_input(BenchmarkId::new("sigma_fibered/Z2", &name), &pool, |b, pool| {
            b.iter(|| pool.install(|| sigma_fibered_functor(z2.clone(), 2).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, checks);
criterion_main!(benches);
