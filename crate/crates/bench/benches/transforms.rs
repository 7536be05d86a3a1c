use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use aqft_core::ensemble::{run_ensemble_with, Workers};
use aqft_core::network::{build_aqft, build_qft, run};
use aqft_core::oracle::dft_matrix;
use aqft_core::periodicity::make_periodic_state;
use aqft_core::{ExperimentConfig, NoiseModel, PeriodicStateSpec, RegisterSize};

fn bench_networks(c: &mut Criterion) {
    let mut group = c.benchmark_group("qft_noiseless");
    for bits in [9u32, 12, 16] {
        let size = RegisterSize::new(bits).unwrap();
        let input = make_periodic_state(&PeriodicStateSpec::new(size, 10, 8).unwrap()).unwrap();
        let net = build_qft(size);
        group.bench_with_input(BenchmarkId::from_parameter(bits), &input, |b, input| {
            b.iter(|| run(&net, black_box(input), None, 0).unwrap())
        });
    }
    group.finish();

    let size = RegisterSize::new(12).unwrap();
    let input = make_periodic_state(&PeriodicStateSpec::new(size, 10, 8).unwrap()).unwrap();
    let noise = NoiseModel::new(0.3, 1).unwrap();
    let mut group = c.benchmark_group("aqft_noisy_L12");
    for m in [4u32, 6, 12] {
        let net = build_aqft(size, m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &net, |b, net| {
            b.iter(|| run(net, &input, Some(&noise), black_box(3)).unwrap())
        });
    }
    group.finish();
}

fn bench_ensemble(c: &mut Criterion) {
    let size = RegisterSize::new(9).unwrap();
    let state = PeriodicStateSpec::new(size, 10, 8).unwrap();
    let config = ExperimentConfig::new(state, 6, NoiseModel::new(0.3, 7).unwrap(), 200).unwrap();
    c.bench_function("ensemble_L9_m6_200", |b| {
        b.iter(|| run_ensemble_with(black_box(&config), Workers::Auto, false).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    c.bench_function("dft_matrix_L8", |b| {
        b.iter(|| dft_matrix(black_box(8)).unwrap())
    });
}

criterion_group!(benches, bench_networks, bench_ensemble, bench_oracle);
criterion_main!(benches);
