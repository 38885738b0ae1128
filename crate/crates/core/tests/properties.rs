use std::collections::HashSet;

use proptest::prelude::*;
use tcaco::config::{FaultBehavior, FaultSpec, ForwardingMode, SourcePolicy};
use tcaco::engine::{Protocol, Simulation};
use tcaco::{NodeId, SimConfig};

fn behavior() -> impl Strategy<Value = FaultBehavior> {
    prop_oneof![
        (0.3..=1.0f64).prop_map(|p| FaultBehavior::Drop { p }),
        (1u32..=3).prop_map(|r| FaultBehavior::Flood { r }),
        (1u32..=3).prop_map(|k| FaultBehavior::Duplicate { k }),
        (1u32..=3).prop_map(|extra| FaultBehavior::Delay { extra }),
    ]
}

fn config() -> impl Strategy<Value = SimConfig> {
    (
        (5usize..=30, 50.0..130.0f64, 1usize..=12, 1usize..=20, 1u32..=4),
        (prop::option::of((0.05..0.3f64, behavior())), any::<bool>(), any::<bool>(), any::<u64>()),
    )
        .prop_map(|((n, range, ppr, cap, wc), (fault, random_source, roulette, seed))| SimConfig {
            node_count: n,
            radio_range: range,
            packets_per_round: ppr,
            queue_capacity: cap,
            wc_max: wc,
            initial_energy: 0.05,
            max_cycles: 40,
            rng_seed: seed,
            fault_spec: fault.map(|(f, b)| vec![FaultSpec::fraction(f, b)]).unwrap_or_default(),
            source_policy: if random_source { SourcePolicy::RandomPerRound } else { SourcePolicy::default() },
            forwarding_mode: if roulette { ForwardingMode::StochasticRoulette } else { ForwardingMode::default() },
            ..SimConfig::default()
        })
}

fn protocol() -> impl Strategy<Value = Protocol> {
    prop::sample::select(Protocol::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn runs_conserve_packets_and_energy(cfg in config(), protocol in protocol()) {
        let Ok(mut sim) = Simulation::new(cfg.clone(), protocol) else { return Ok(()) };
        let initial = sim.initial_energy_total();
        sim.run_to_end();
        let m = sim.metrics();
        prop_assert_eq!(m.invariant_violations(initial), Vec::<String>::new());
        prop_assert!(m.milestones.is_monotone());
        prop_assert!(m.cycles.len() as u64 <= cfg.max_cycles);
        prop_assert!(sim.nodes().iter().all(|n| n.energy() >= 0.0 && n.energy() <= cfg.initial_energy));
        let delivered: u64 = m.cycles.iter().map(|c| c.delivered).sum();
        prop_assert!(delivered <= m.total_generated());
    }

    #[test]
    fn malicious_nodes_are_never_chosen_as_relays(cfg in config(), trust_protocol in any::<bool>()) {
        let protocol = if trust_protocol { Protocol::TcAco } else { Protocol::TrustGreedy };
        let Ok(mut sim) = Simulation::new(cfg, protocol) else { return Ok(()) };
        sim.record_routes(true);
        let sink = sim.topology().sink();
        loop {
            let n = sim.nodes().len();
            let malicious: HashSet<NodeId> =
                (0..n).map(NodeId).filter(|v| sim.trust_table().is_malicious(*v)).collect();
            let seen = sim.routes().len();
            if sim.run_cycle().is_err() {
                break;
            }
            let cycle = sim.cycle();
            for r in &sim.routes()[seen..] {
                // packets that lived longer may have been handed on under an older table
                if r.created_cycle != cycle {
                    continue;
                }
                for hop in r.trail.iter().skip(1).filter(|v| **v != sink) {
                    prop_assert!(!malicious.contains(hop), "cycle {} packet {} via {:?}", cycle, r.packet_id, hop);
                }
            }
        }
    }

    #[test]
    fn trust_values_stay_in_unit_interval(cfg in config()) {
        let Ok(mut sim) = Simulation::new(cfg, Protocol::TcAco) else { return Ok(()) };
        sim.run_to_end();
        let t = sim.trust_table();
        for (_, _, link) in t.iter_links() {
            for x in [link.ne, link.ptr, link.pl, link.value] {
                prop_assert!((0.0..=1.0).contains(&x), "{:?}", link);
            }
        }
    }
}
