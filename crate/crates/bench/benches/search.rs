use std::hint::black_box;

use adft_core::beamsim::{all_patterns, ArrayGeometry, PatternOptions};
use adft_core::build_approx_matrix;
use adft_core::search::run_search;
use criterion::{criterion_group, criterion_main, Criterion};

fn search(c: &mut Criterion) {
    c.bench_function("search_625", |b| b.iter(|| black_box(run_search())));
}

fn patterns(c: &mut Criterion) {
    let t = build_approx_matrix();
    let g = ArrayGeometry::default();
    let opts = PatternOptions::default();
    c.bench_function("patterns_8x1801", |b| b.iter(|| black_box(all_patterns(&t, &g, &opts).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = search, patterns
}
criterion_main!(benches);
