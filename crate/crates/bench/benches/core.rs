use std::hint::black_box;

use bowditch_bench::{box_characters, quasi_fuchsian, slice};
use bowditch_core::{
    bq_classify, classify_with_reduction, fan_coefficients, min_neighbor_search, reduce_trace,
    scan_slice, trace_at_slope, Slope,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn classify(c: &mut Criterion) {
    let qf = quasi_fuchsian();
    c.bench_function("bq_classify/quasi_fuchsian", |b| {
        b.iter(|| bq_classify(black_box(&qf), 0.5, 10_000).unwrap())
    });
    let batch = box_characters(64);
    c.bench_function("bq_classify/box_64", |b| {
        b.iter(|| {
            for t in &batch {
                black_box(bq_classify(t, 0.5, 10_000).unwrap());
            }
        })
    });
    c.bench_function("classify_with_reduction/box_64", |b| {
        b.iter(|| {
            for t in &batch {
                black_box(classify_with_reduction(t, 0.5, 10_000, 1_000).unwrap());
            }
        })
    });
}

fn traces(c: &mut Criterion) {
    let t = quasi_fuchsian();
    let slopes: Vec<Slope> = [(1, 0), (3, 5), (8, 13), (-21, 34), (34, 55)]
        .iter()
        .map(|&(p, q)| Slope::new(p, q).unwrap())
        .collect();
    c.bench_function("trace_at_slope", |b| {
        b.iter(|| {
            for &s in &slopes {
                black_box(trace_at_slope(black_box(&t), s).unwrap());
            }
        })
    });
    let fc = fan_coefficients(t.x(), t.y(), t.z(), true).unwrap();
    c.bench_function("min_neighbor_search/window_64", |b| {
        b.iter(|| min_neighbor_search(black_box(&fc), 64).unwrap())
    });
    let batch = box_characters(64);
    c.bench_function("reduce_trace/box_64", |b| {
        b.iter(|| {
            for t in &batch {
                black_box(reduce_trace(t, 0.5, 1e-12, 1_000).unwrap());
            }
        })
    });
}

fn scan(c: &mut Criterion) {
    let spec = slice(32);
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("slice_32x32", |b| b.iter(|| scan_slice(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, classify, traces, scan);
criterion_main!(benches);
