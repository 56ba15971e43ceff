use geospectra::par::Execution;
use geospectra::simulator::{estimate_fer_with, write_fer_csv};
use geospectra::{
    estimate_fer, union_bound, wef, LinearCode, NoiseModel, SimConfig, Trellis, TxPolicy,
};

fn hamming() -> LinearCode {
    LinearCode::builtin("hamming74").unwrap()
}

#[test]
fn repeated_runs_are_identical() {
    let mut cfg = SimConfig::new(vec![0.7, 1.0], 42);
    cfg.max_frames = 30_000;
    cfg.target_errors = 500;
    let a = estimate_fer(&hamming(), &cfg).unwrap();
    let b = estimate_fer_with(&hamming(), &cfg, Execution::Sequential).unwrap();
    assert_eq!(a, b);
    cfg.seed = 43;
    assert_ne!(estimate_fer(&hamming(), &cfg).unwrap(), a);
}

#[test]
fn linearity_makes_the_transmit_policy_irrelevant() {
    let mut cfg = SimConfig::new(vec![0.8], 9);
    cfg.max_frames = 100_000;
    cfg.target_errors = u64::MAX;
    let zero = estimate_fer(&hamming(), &cfg).unwrap()[0];
    cfg.policy = TxPolicy::Random;
    let random = estimate_fer(&hamming(), &cfg).unwrap()[0];
    let se = (zero.stderr.powi(2) + random.stderr.powi(2)).sqrt();
    assert!(
        (zero.fer - random.fer).abs() < 4.0 * se,
        "{zero:?} {random:?}"
    );
}

#[test]
fn simulation_sits_below_the_union_bound() {
    let code = hamming();
    let mut cfg = SimConfig::new(vec![0.6, 1.0], 5);
    cfg.target_errors = 2_000;
    let t = Trellis::build(&code);
    for est in estimate_fer(&code, &cfg).unwrap() {
        let u = union_bound(&wef(&t).unwrap(), NoiseModel::new(est.sigma).unwrap()).unwrap();
        assert!(est.fer - 3.0 * est.stderr <= u, "{est:?} vs {u}");
        assert_eq!(est.errors, 2_000);
    }
}

#[test]
fn error_rate_falls_with_noise() {
    let mut cfg = SimConfig::new(vec![1.2, 0.9, 0.6], 8);
    cfg.target_errors = 1_000;
    let est = estimate_fer(&hamming(), &cfg).unwrap();
    assert!(est[0].fer > est[1].fer && est[1].fer > est[2].fer);
    let mut buf = Vec::new();
    write_fer_csv(&est, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("sigma,ebn0_db,frames,errors,fer,stderr\n"));
    assert_eq!(text.lines().count(), 4);
}
