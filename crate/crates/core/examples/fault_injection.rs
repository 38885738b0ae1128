//! Each fault behaviour against each protocol, 150 cycles.

use tcaco::config::{FaultBehavior, FaultSpec, SourcePolicy};
use tcaco::engine::{Protocol, Simulation};
use tcaco::SimConfig;

fn main() {
    let behaviours = [
        FaultBehavior::Drop { p: 0.8 },
        FaultBehavior::Delay { extra: 2 },
        FaultBehavior::Flood { r: 5 },
        FaultBehavior::Duplicate { k: 2 },
    ];
    println!("{:<28}{:<14}{:>9}{:>10}{:>9}{:>9}{:>10}", "fault", "protocol", "gen", "delivered", "overflow", "timeout", "malicious");
    for b in behaviours {
        let cfg = SimConfig {
            fault_spec: vec![FaultSpec::fraction(0.2, b)],
            source_policy: SourcePolicy::RandomPerRound,
            max_cycles: 150,
            ..SimConfig::default()
        };
        for protocol in Protocol::ALL {
            let m = Simulation::new(cfg.clone(), protocol).unwrap().run();
            let sum = |f: fn(&tcaco::engine::CycleRecord) -> u64| m.cycles.iter().map(f).sum::<u64>();
            println!(
                "{:<28}{:<14}{:>9}{:>10}{:>9}{:>9}{:>10}",
                format!("{b:?}"),
                protocol.name(),
                m.total_generated(),
                m.total_delivered(),
                sum(|c| c.dropped_overflow),
                sum(|c| c.dropped_timeout),
                sum(|c| c.dropped_malicious),
            );
        }
    }
}
