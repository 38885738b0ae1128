//! One tc_aco run on the default 50-node field.

use tcaco::engine::{Protocol, Simulation};
use tcaco::SimConfig;

fn main() {
    let cfg = SimConfig::default();
    let sim = Simulation::new(cfg, Protocol::TcAco).expect("default config is valid");
    println!("source {:?}, base station at {:?}", sim.fixed_source(), sim.topology().bs_position());
    let m = sim.run();
    println!("ended after {} rounds: {:?}", m.rounds(), m.termination);
    println!("delivered {} of {} packets", m.total_delivered(), m.total_generated());
    for (pct, round) in tcaco::engine::MILESTONE_PERCENTS.iter().zip(m.milestones.to_array()) {
        println!("{pct:>3}% dead at round {}", round.map_or("-".to_string(), |r| r.to_string()));
    }
}
