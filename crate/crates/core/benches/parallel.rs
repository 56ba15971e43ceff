use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geospectra::bounds::bound_curve_with;
use geospectra::error_prob::{mc_event_prob_with, tetrahedron_system};
use geospectra::par::Execution;
use geospectra::simulator::estimate_fer_with;
use geospectra::spectra::forward_spectrum_with;
use geospectra::{
    parse_grid, BoundKind, GridUnit, LinearCode, NoiseModel, PrimeField, SimConfig,
    TetrahedronConfig, Trellis,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn monte_carlo(c: &mut Criterion) {
    let sys = tetrahedron_system(&TetrahedronConfig::new(3, 3, 4, 3, 4, 4)).unwrap();
    let noise = NoiseModel::new(1.0).unwrap();
    let mut group = c.benchmark_group("mc_event_prob");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| mc_event_prob_with(&sys, noise, black_box(1 << 18), 7, exec).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let code = LinearCode::builtin("hamming74").unwrap();
    let mut cfg = SimConfig::new(vec![0.5], 3);
    cfg.max_frames = 1 << 16;
    cfg.target_errors = u64::MAX;
    let mut group = c.benchmark_group("estimate_fer");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| estimate_fer_with(&code, black_box(&cfg), exec).unwrap())
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let code = LinearCode::random(PrimeField::new(3).unwrap(), 16, 6, &mut rng).unwrap();
    let trellis = Trellis::build(&code);
    let refs = vec![code.codeword_at(1).unwrap(), code.codeword_at(2).unwrap()];
    let mut group = c.benchmark_group("forward_spectrum");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| forward_spectrum_with(&trellis, black_box(&refs), exec).unwrap())
        });
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let code = LinearCode::builtin("hamming74").unwrap();
    let grid = parse_grid("0:10:0.25").unwrap();
    let mut group = c.benchmark_group("bound_curve");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                bound_curve_with(
                    &code,
                    BoundKind::Tetrahedron,
                    None,
                    black_box(&grid),
                    GridUnit::EbN0Db,
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, simulation, spectrum, bounds);
criterion_main!(benches);
