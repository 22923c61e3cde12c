//! Criterion benches: transform throughput, single-fit cost, and the
//! replication loop in parallel vs sequential mode.
//!
//! Run with `cargo bench -p wden-core`. The replication comparison uses the
//! same seeded configuration for both paths, so the outputs are identical
//! and only scheduling differs.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use wden_core::estimator::{estimate_density, EstimatorConfig};
use wden_core::risk::{mise_study, mise_study_sequential, ExperimentConfig};
use wden_core::stream::stream;
use wden_core::testbed::{sample_model, MixtureModel, NSpec};
use wden_core::wavelet::{dwt_periodized, idwt_periodized, WaveletFilter};
use rand::Rng;

fn bench_transform(c: &mut Criterion) {
    let filter = WaveletFilter::new("sym6").unwrap();
    let mut rng = stream(0xbe, 0);
    let signal: Vec<f64> = (0..512).map(|_| rng.gen_range(-1.0..1.0)).collect();
    c.bench_function("dwt_idwt_roundtrip_512_sym6", |b| {
        b.iter(|| {
            let pyr = dwt_periodized(black_box(&signal), &filter, 3).unwrap();
            black_box(idwt_periodized(&pyr, &filter).unwrap());
        })
    });
}

fn bench_single_fit(c: &mut Criterion) {
    let model = MixtureModel::new("kurtotic").unwrap();
    let sample = sample_model(&model, 1000, &mut stream(0xbe, 1));
    let cfg = EstimatorConfig::default();
    c.bench_function("block_estimate_n1000", |b| {
        b.iter(|| black_box(estimate_density(black_box(&sample), &cfg).unwrap()))
    });
}

fn bench_replications(c: &mut Criterion) {
    let model = MixtureModel::new("separated-bimodal").unwrap();
    let mut cfg = ExperimentConfig::new(model, NSpec::Geometric { eta: 0.5 }, 256, 8, 7);
    cfg.folds = 5;

    let mut group = c.benchmark_group("mise_study_8reps_n256");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(mise_study(&cfg).unwrap())));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(mise_study_sequential(&cfg).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_transform, bench_single_fit, bench_replications);
criterion_main!(benches);
