//! Next-hop choice among three candidates: probabilities, rank walk, roulette.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcaco::config::CongestionPolarity;
use tcaco::routing::{
    rank_candidates, select_next_hop, select_next_hop_roulette, transition_probabilities, trust_congestion_metric,
    CandidateWeight,
};
use tcaco::NodeId;

fn main() {
    // (trust, congestion index, distance, pheromone)
    let links = [(0.9, 0.1, 25.0, 1.0), (0.8, 0.7, 12.0, 1.5), (0.6, 0.0, 10.0, 2.0)];
    let ids = [NodeId(4), NodeId(7), NodeId(9)];
    let weights: Vec<CandidateWeight> = links
        .iter()
        .map(|&(t, ci, d, tau)| CandidateWeight::new(trust_congestion_metric(t, ci, 0.5, CongestionPolarity::Inverted), d, tau))
        .collect();
    let t = transition_probabilities(&weights, [1.0, 1.0, 1.0]).unwrap();
    let ranked = rank_candidates(&ids, &t.probabilities);
    for (id, p) in &ranked {
        println!("node {:>2}  p = {p:.4}", id.0);
    }
    println!("rank walk picks {:?}", select_next_hop(&ranked, |_| true));
    println!("with the favourite full: {:?}", select_next_hop(&ranked, |v| v != ranked[0].0));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut hits = [0u32; 3];
    for _ in 0..10_000 {
        let pick = select_next_hop_roulette(&ranked, |_| true, &mut rng).unwrap();
        hits[ids.iter().position(|&v| v == pick).unwrap()] += 1;
    }
    println!("roulette over 10000 draws: {hits:?}");
}
