//! Drop-all faults: tc_aco stops handing packets to them, dist_aco does not.

use tcaco::config::{FaultBehavior, FaultSpec};
use tcaco::engine::{Protocol, Simulation};
use tcaco::{NodeId, SimConfig};

fn main() {
    let cfg = SimConfig {
        fault_spec: vec![FaultSpec::fraction(0.2, FaultBehavior::Drop { p: 1.0 })],
        trust_threshold: 0.5,
        ..SimConfig::default()
    };
    for protocol in [Protocol::TcAco, Protocol::DistAco] {
        let mut sim = Simulation::new(cfg.clone(), protocol).unwrap();
        let mut per_cycle = Vec::new();
        for _ in 0..15 {
            match sim.run_cycle() {
                Ok(rec) => per_cycle.push(rec.forwarded_to_faulty),
                Err(_) => break,
            }
        }
        println!("{protocol:<12} packets to faulty nodes, cycles 1-15: {per_cycle:?}");
        if protocol.uses_trust() {
            let faulty: Vec<usize> = (0..sim.nodes().len()).filter(|&k| sim.nodes()[k].is_malicious()).collect();
            let flagged: Vec<usize> = (0..sim.nodes().len()).filter(|&k| sim.trust_table().is_malicious(NodeId(k))).collect();
            println!("  fault-injected {faulty:?}");
            println!("  classified malicious {flagged:?}");
        }
    }
}
