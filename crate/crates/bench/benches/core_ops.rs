//! Criterion benchmarks for the hot paths: the critical-coupling solve,
//! recurrence construction, curve tracing, and Bessel evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use oscgauss::orthopoly::{build_recurrence, ProblemParams};
use oscgauss::potential::{solve_lambda0, trace_scurve};
use oscgauss::precision::bessel_j0;
use oscgauss::{MPComplex, PrecisionContext};

fn bench_lambda0(c: &mut Criterion) {
    let ctx = PrecisionContext::new(40).unwrap();
    c.bench_function("solve_lambda0/40_digits", |b| {
        b.iter(|| black_box(solve_lambda0(black_box(&ctx))))
    });
}

fn bench_recurrence(c: &mut Criterion) {
    let ctx = PrecisionContext::new(40).unwrap();
    for n in [10usize, 20] {
        let params =
            ProblemParams::from_lambda(n, ctx.float(0.5), ctx).unwrap();
        c.bench_function(&format!("build_recurrence/n{n}"), |b| {
            b.iter(|| black_box(build_recurrence(black_box(&params)).unwrap()))
        });
    }
}

fn bench_curve_trace(c: &mut Criterion) {
    let ctx = PrecisionContext::new(40).unwrap();
    let lam = ctx.float(0.5);
    let tol = ctx.ten_pow(-20);
    c.bench_function("trace_scurve/step_1e-2", |b| {
        b.iter(|| black_box(trace_scurve(black_box(&lam), 1e-2, &tol, &ctx).unwrap()))
    });
}

fn bench_bessel(c: &mut Criterion) {
    let ctx = PrecisionContext::new(40).unwrap();
    let small = MPComplex::from_f64(ctx.prec(), 1.3, 0.7);
    let large = MPComplex::from_f64(ctx.prec(), 0.0, 25.0);
    c.bench_function("bessel_j0/series_region", |b| {
        b.iter(|| black_box(bessel_j0(black_box(&small), &ctx).unwrap()))
    });
    c.bench_function("bessel_j0/asymptotic_region", |b| {
        b.iter(|| black_box(bessel_j0(black_box(&large), &ctx).unwrap()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_lambda0, bench_recurrence, bench_curve_trace, bench_bessel
}
criterion_main!(benches);
