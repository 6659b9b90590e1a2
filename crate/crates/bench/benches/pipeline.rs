use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use x0plus_bench::basis;
use x0plus_core::geometry::{conic_cubic_divisor, plane_section};
use x0plus_core::golden;
use x0plus_core::{build_model, label_points, rational_lines, rational_planes, search, Hyperplane, LabelConfig};

fn model(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_model");
    g.sample_size(10);
    for level in [97, 137, 311] {
        let b = basis(level);
        g.bench_function(level.to_string(), |bench| bench.iter(|| build_model(black_box(&b)).unwrap()));
    }
    g.finish();
}

fn points(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for level in [97, 137] {
        let m = build_model(&basis(level)).unwrap();
        g.bench_function(format!("{level}/h30"), |bench| bench.iter(|| search(black_box(&m), 30).unwrap()));
    }
    g.finish();
}

fn divisors(c: &mut Criterion) {
    let m = golden::model();
    let plane = Hyperplane::from_i64(&[1, 1, 2, 3]).unwrap().subspace();
    c.bench_function("plane_divisor/137", |bench| {
        bench.iter(|| conic_cubic_divisor(&plane_section(black_box(&m), &plane).unwrap()).unwrap())
    });
    let pts = golden::points();
    let labels = golden::labels();
    let mut g = c.benchmark_group("incidence");
    g.sample_size(10);
    g.bench_function("planes/137", |bench| bench.iter(|| rational_planes(black_box(&m), &pts, &labels).unwrap()));
    let m97 = build_model(&basis(97)).unwrap();
    let pts97 = search(&m97, 30).unwrap();
    g.bench_function("lines/97", |bench| {
        bench.iter(|| rational_lines(black_box(&m97), &pts97, &Default::default()).unwrap())
    });
    g.finish();
}

fn labels(c: &mut Criterion) {
    let mut g = c.benchmark_group("label_points");
    g.sample_size(10);
    let b = basis(137);
    let pts = search(&build_model(&b).unwrap(), 30).unwrap();
    let cfg = LabelConfig::default();
    g.bench_function("137", |bench| bench.iter(|| label_points(black_box(&b), &pts, &cfg)));
    g.finish();
}

criterion_group!(benches, model, points, divisors, labels);
criterion_main!(benches);
