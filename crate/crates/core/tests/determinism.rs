use std::path::Path;

use tcaco::config::SourcePolicy;
use tcaco::engine::{Protocol, Simulation};
use tcaco::experiment::{load_experiment, per_cycle_csv, run_all, Overrides};
use tcaco::SimConfig;

fn small() -> SimConfig {
    SimConfig {
        node_count: 25,
        max_cycles: 40,
        packets_per_round: 8,
        source_policy: SourcePolicy::RandomPerRound,
        rng_seed: 11,
        ..SimConfig::default()
    }
}

fn csv(protocol: Protocol, cfg: &SimConfig) -> String {
    per_cycle_csv(&Simulation::new(cfg.clone(), protocol).unwrap().run())
}

#[test]
fn reruns_are_byte_identical() {
    for protocol in Protocol::ALL {
        assert_eq!(csv(protocol, &small()), csv(protocol, &small()), "{protocol}");
    }
}

#[test]
fn seeds_change_the_outcome() {
    let other = SimConfig { rng_seed: 12, ..small() };
    assert_ne!(csv(Protocol::TcAco, &small()), csv(Protocol::TcAco, &other));
}

#[test]
fn matches_golden_trace() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/tc_aco_small.csv");
    let got = csv(Protocol::TcAco, &small());
    if std::env::var_os("TCACO_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(got, want);
}

#[test]
fn parallel_sweep_equals_serial_runs() {
    let overrides = Overrides { replicates: Some(4), seed: Some(7), max_cycles: Some(30), ..Overrides::default() };
    let spec = load_experiment(None, overrides).unwrap();
    let runs = run_all(&spec).unwrap();
    assert_eq!(runs.len(), 4 * Protocol::ALL.len());
    for r in &runs {
        assert_eq!(r.seed, 7 + r.replicate as u64);
        let cfg = SimConfig { rng_seed: r.seed, max_cycles: 30, ..SimConfig::default() };
        assert_eq!(per_cycle_csv(&r.metrics), csv(r.protocol, &cfg), "{} r{}", r.protocol, r.replicate);
    }
}
