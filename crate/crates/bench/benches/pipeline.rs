use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use plv_core::{
    assemble_gram, bessel_j0, certify, recover, synthesize_lags, ApsModel, ArrayConfig, SynthesisOptions,
};

fn bench_bessel(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_j0");
    for z in [1.5, 12.0, 80.0] {
        group.bench_with_input(BenchmarkId::from_parameter(z), &z, |b, &z| b.iter(|| bessel_j0(black_box(z))));
    }
    group.finish();
}

fn bench_gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_gram");
    for m in [4usize, 8, 16] {
        let cfg = ArrayConfig::new(m, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &cfg, |b, cfg| b.iter(|| assemble_gram(cfg).unwrap()));
    }
    group.finish();
}

fn bench_pipeline(c: &mut Criterion) {
    let model = ApsModel::gaussian(0.3, 0.05, 1.0).unwrap();
    let opts = SynthesisOptions::default();
    let mut group = c.benchmark_group("pipeline");
    for m in [4usize, 16] {
        let cfg = ArrayConfig::new(m, 1.0).unwrap();
        let lags = synthesize_lags(&model, &cfg, &opts).unwrap();
        group.bench_with_input(BenchmarkId::new("synthesize", m), &cfg, |b, cfg| {
            b.iter(|| synthesize_lags(&model, cfg, &opts).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("recover", m), &cfg, |b, cfg| b.iter(|| recover(&lags, cfg).unwrap()));
        group.bench_with_input(BenchmarkId::new("certify", m), &cfg, |b, cfg| b.iter(|| certify(&model, cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_bessel, bench_gram, bench_pipeline);
criterion_main!(benches);
