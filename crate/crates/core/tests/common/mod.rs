//! Oracles shared by the per-area suites and the acceptance run.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcaco::congestion::NodeQueue;
use tcaco::packet::Packet;
use tcaco::routing::{transition_probabilities, CandidateWeight};
use tcaco::NodeId;

/// Raw per-cycle record of one queue.
#[derive(Default)]
pub struct Trace {
    pub inflow: Vec<u64>,
    pub outflow: Vec<u64>,
    pub free_at_end: Vec<usize>,
}

/// Congestion index for `cycle` recomputed from scratch.
pub fn brute_force_ci(t: &Trace, cycle: usize, window: Option<usize>) -> f64 {
    if cycle < 2 {
        return 0.0;
    }
    let end = cycle - 1;
    let len = window.map_or(end, |w| w.min(end));
    let sum_in: u64 = t.inflow[end - len..end].iter().sum();
    let sum_out: u64 = t.outflow[end - len..end].iter().sum();
    let r_in = sum_in as f64 / len as f64;
    let r_out = sum_out as f64 / len as f64;
    let q = t.free_at_end[cycle - 2] as f64;
    if r_in + q <= 0.0 {
        return 0.0;
    }
    ((r_in + q - r_out) / (r_in + q)).clamp(0.0, 1.0)
}

/// Occupancy model kept apart from `NodeQueue`: wait counters of held packets.
fn arrive(held: &mut Vec<u32>, capacity: usize) {
    if held.len() < capacity {
        held.push(0);
    }
}

pub struct CiReport {
    pub traces: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Drives real queues with random traffic and compares their index with the
/// replay on every cycle of every node.
pub fn congestion_replay(traces: usize, seed: u64) -> CiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CiReport { traces, checked: 0, mismatches: Vec::new() };
    for trace in 0..traces {
        let nodes = rng.random_range(1..=5usize);
        let cycles = rng.random_range(1..=20usize);
        let capacity = rng.random_range(1..=6usize);
        let wc_max = rng.random_range(1..=4u32);
        let window = if rng.random_bool(0.5) { None } else { Some(rng.random_range(1..=6usize)) };
        let mut queues: Vec<NodeQueue> = (0..nodes).map(|_| NodeQueue::new(capacity)).collect();
        let mut logs: Vec<Trace> = (0..nodes).map(|_| Trace::default()).collect();
        let mut held: Vec<Vec<u32>> = vec![Vec::new(); nodes];
        let mut next_id = 0u64;

        for cycle in 1..=cycles {
            for k in 0..nodes {
                let got = queues[k].congestion_index(cycle as u64, window);
                let want = brute_force_ci(&logs[k], cycle, window);
                if got != want {
                    report.mismatches.push(format!("trace {trace} cycle {cycle} node {k}: {got} vs {want}"));
                }
                report.checked += 1;
            }
            let mut inflow = vec![0u64; nodes];
            let mut outflow = vec![0u64; nodes];
            for k in 0..nodes {
                let forward = rng.random_range(0..=queues[k].len());
                for _ in 0..forward {
                    let p = queues[k].pop_front().unwrap();
                    held[k].remove(0);
                    queues[k].record_outflow(1);
                    outflow[k] += 1;
                    if nodes > 1 && rng.random_bool(0.6) {
                        let to = (k + rng.random_range(1..nodes)) % nodes;
                        queues[to].record_inflow(1);
                        inflow[to] += 1;
                        let _ = queues[to].enqueue(p);
                        arrive(&mut held[to], capacity);
                    }
                }
                for _ in 0..rng.random_range(0..=3u32) {
                    next_id += 1;
                    queues[k].record_inflow(1);
                    inflow[k] += 1;
                    let _ = queues[k].enqueue(Packet::new(next_id, NodeId(k), cycle as u64));
                    arrive(&mut held[k], capacity);
                }
            }
            for k in 0..nodes {
                queues[k].tick_wait_and_drop(wc_max);
                held[k].retain(|w| *w < wc_max);
                held[k].iter_mut().for_each(|w| *w += 1);
                assert_eq!(queues[k].len(), held[k].len(), "occupancy model diverged");
                queues[k].close_cycle();
                logs[k].inflow.push(inflow[k]);
                logs[k].outflow.push(outflow[k]);
                logs[k].free_at_end.push(capacity - held[k].len());
            }
        }
    }
    report
}

pub fn random_candidates(rng: &mut ChaCha8Rng) -> Vec<CandidateWeight> {
    let size = rng.random_range(1..=10usize);
    (0..size)
        .map(|_| {
            let tcm = rng.random::<f64>();
            let d = rng.random_range(0.5..200.0);
            // pheromone spans the floor up to a heavily used link
            let tau = 10f64.powf(rng.random_range(-6.0..2.0));
            CandidateWeight::new(tcm, d, tau)
        })
        .collect()
}

pub struct NormReport {
    pub sets: usize,
    pub worst_sum_error: f64,
    pub out_of_range: usize,
}

pub fn normalization_sweep(sets: usize, seed: u64) -> NormReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NormReport { sets, worst_sum_error: 0.0, out_of_range: 0 };
    for _ in 0..sets {
        let set = random_candidates(&mut rng);
        let betas = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
        let t = transition_probabilities(&set, betas).unwrap();
        assert_eq!(t.probabilities.len(), set.len());
        let sum: f64 = t.probabilities.iter().sum();
        report.worst_sum_error = report.worst_sum_error.max((sum - 1.0).abs());
        report.out_of_range += t.probabilities.iter().filter(|p| !(0.0..=1.0).contains(*p)).count();
    }
    report
}
