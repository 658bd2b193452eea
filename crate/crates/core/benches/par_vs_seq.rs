//! Parallel vs sequential sweeps over the same margin grids. The checkers
//! are pure, so the two paths produce identical output; the interesting
//! number is the speedup of the rayon fan-out on quadrature-bound work.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use funkineq_core::scan::{grid_scan, grid_scan_sequential};
use funkineq_core::suite::CheckerParams;
use funkineq_core::QuadratureConfig;
use std::hint::black_box;

fn bench_grid_scan(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let base = CheckerParams::default();
    let alphas: Vec<f64> = (0..8).map(|i| 0.6 + 0.3 * i as f64).collect();
    let params: Vec<f64> = (0..8).map(|i| 0.1 + 0.1 * i as f64).collect();

    let mut group = c.benchmark_group("bg_margin_grid_8x8");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", "rayon"), |b| {
        b.iter(|| {
            let pts = grid_scan(black_box("bg"), "linear", &alphas, &params, &base, &cfg).unwrap();
            black_box(pts.len())
        })
    });
    group.bench_function(BenchmarkId::new("sequential", "single-thread"), |b| {
        b.iter(|| {
            let pts =
                grid_scan_sequential(black_box("bg"), "linear", &alphas, &params, &base, &cfg)
                    .unwrap();
            black_box(pts.len())
        })
    });
    group.finish();
}

fn bench_ir_sweep(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let base = CheckerParams::default();
    let alphas = [1.0];
    let params: Vec<f64> = (0..24).map(|i| 0.05 + 0.04 * i as f64).collect();

    let mut group = c.benchmark_group("ir_family_sweep_24");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            grid_scan("ir", "linear", &alphas, &params, &base, &cfg)
                .unwrap()
                .len()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            grid_scan_sequential("ir", "linear", &alphas, &params, &base, &cfg)
                .unwrap()
                .len()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_grid_scan, bench_ir_sweep);
criterion_main!(benches);
