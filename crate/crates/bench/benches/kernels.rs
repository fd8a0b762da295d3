use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use pretest_core::{
    orthant, population_moments, power_ptt, run_ptt, simulate, ErrorDist, OrthantQuery,
    PowerParams, Sample, ScoreFunction, SimConfig, TestConfig,
};

fn kernels(c: &mut Criterion) {
    c.bench_function("orthant", |b| {
        let q = OrthantQuery::new(0.3, -1.1, -0.7).unwrap();
        b.iter(|| orthant(black_box(q)))
    });

    let pop = population_moments(&ScoreFunction::default(), &ErrorDist::StandardNormal).unwrap();
    let params = PowerParams::new(0.5, 0.5, pop.sigma0(), pop.gamma).at(1.0, 2.0);
    c.bench_function("power_ptt", |b| {
        b.iter(|| power_ptt(black_box(&params)).unwrap())
    });

    c.bench_function("population_moments", |b| {
        b.iter(|| {
            population_moments(
                &ScoreFunction::default(),
                black_box(&ErrorDist::StudentT { df: 3.0 }),
            )
            .unwrap()
        })
    });

    let n = 1000;
    let c_col: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
    let x: Vec<f64> = (0..n)
        .map(|i| ((i * 7919) % 1000) as f64 / 250.0 - 2.0)
        .collect();
    let sample = Sample::from_columns(x, c_col).unwrap();
    let cfg = TestConfig::default();
    c.bench_function("run_ptt_n1000", |b| {
        b.iter(|| run_ptt(&cfg, black_box(&sample)).unwrap())
    });

    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    let sim = SimConfig {
        n: 1000,
        reps: 200,
        ..SimConfig::default()
    };
    group.bench_function("n1000_reps200", |b| {
        b.iter(|| simulate(black_box(&sim)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
