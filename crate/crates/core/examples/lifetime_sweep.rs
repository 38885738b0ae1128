//! Replicated lifetime comparison of all protocols, optionally written to disk.
//!
//! `cargo run --release --example lifetime_sweep -- [replicates] [out_dir]`

use tcaco::config::SourcePolicy;
use tcaco::engine::Protocol;
use tcaco::experiment::{emit_outputs, run_all, summarize, ExperimentSpec};
use tcaco::SimConfig;

fn main() {
    let mut args = std::env::args().skip(1);
    let replicates: usize = args.next().map_or(5, |s| s.parse().expect("replicate count"));
    let out = args.next();

    let cfg = SimConfig { source_policy: SourcePolicy::RandomPerRound, ..SimConfig::default() };
    let mut spec = ExperimentSpec::new(cfg, Protocol::ALL.to_vec(), out.clone().unwrap_or_default());
    spec.replicates = replicates;
    let runs = run_all(&spec).unwrap();
    let summary = summarize(&spec, &runs);

    println!("median round at which a share of nodes is dead ({replicates} replicates)");
    println!("{:<14}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}", "", "1%", "10%", "20%", "30%", "40%", "50%", "60%");
    for (name, row) in summary.median_grid() {
        let cells: String = row.iter().map(|v| format!("{:>6}", v.map_or("-".into(), |r| r.to_string()))).collect();
        println!("{name:<14}{cells}");
    }
    for r in runs.iter().filter(|r| r.replicate == 0) {
        let share = r.metrics.total_delivered() as f64 / r.metrics.total_generated().max(1) as f64;
        println!("{:<14} replicate 0 delivery ratio {share:.2}", r.protocol.name());
    }
    if out.is_some() {
        for p in emit_outputs(&spec, &runs).unwrap() {
            println!("wrote {}", p.display());
        }
    }
}
