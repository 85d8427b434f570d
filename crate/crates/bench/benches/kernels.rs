use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use polytorsion::{torsion, universal_torsion_commutative};
use polytorsion_bench::{acyclic, dense_matrix, knot, round_polygon, KNOTS};

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    for n in [2, 4, 6, 8] {
        let m = dense_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m).det().unwrap())
        });
    }
    group.finish();
}

fn minkowski(c: &mut Criterion) {
    let mut group = c.benchmark_group("minkowski");
    for points in [8, 16, 32] {
        let p = round_polygon(20, points);
        let q = round_polygon(13, points + 3);
        group.bench_with_input(BenchmarkId::from_parameter(points), &(p, q), |b, (p, q)| {
            b.iter(|| black_box(p).minkowski_sum(black_box(q)).unwrap())
        });
    }
    group.finish();
}

fn knot_torsion(c: &mut Criterion) {
    let mut group = c.benchmark_group("knot_torsion");
    for (name, text) in KNOTS {
        let p = knot(text);
        group.bench_function(name, |b| b.iter(|| universal_torsion_commutative(black_box(&p)).unwrap()));
    }
    group.finish();
}

fn complex_torsion(c: &mut Criterion) {
    let mut group = c.benchmark_group("complex_torsion");
    for pieces in [2, 4, 6] {
        let cx = acyclic(pieces, 7);
        group.bench_with_input(BenchmarkId::from_parameter(pieces), &cx, |b, cx| {
            b.iter(|| torsion(black_box(cx)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, determinant, minkowski, knot_torsion, complex_torsion);
criterion_main!(benches);
