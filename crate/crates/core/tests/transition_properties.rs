mod common;

use proptest::prelude::*;
use tcaco::routing::{rank_candidates, transition_probabilities, update_pheromone, CandidateWeight};
use tcaco::NodeId;

#[test]
fn probabilities_normalize_over_random_sets() {
    let r = common::normalization_sweep(20_000, 6);
    assert_eq!(r.out_of_range, 0);
    assert!(r.worst_sum_error <= 1e-9, "worst deviation {}", r.worst_sum_error);
}

#[test]
fn hand_computed_cases() {
    let b = [1.0; 3];
    let t = transition_probabilities(&[CandidateWeight::new(0.8, 10.0, 1.0), CandidateWeight::new(0.4, 20.0, 1.0)], b)
        .unwrap();
    assert!((t.probabilities[0] - 0.8).abs() < 1e-9);
    assert!((t.probabilities[1] - 0.2).abs() < 1e-9);
    // weights 0.5·(1/5)·2 = 0.2 and 1·(1/10)·1 = 0.1
    let t = transition_probabilities(&[CandidateWeight::new(0.5, 5.0, 2.0), CandidateWeight::new(1.0, 10.0, 1.0)], b)
        .unwrap();
    assert!((t.probabilities[0] - 2.0 / 3.0).abs() < 1e-9);
    // zero exponents reduce everything to uniform
    let t = transition_probabilities(&[CandidateWeight::new(0.1, 5.0, 2.0), CandidateWeight::new(0.9, 50.0, 0.5)], [0.0; 3])
        .unwrap();
    assert_eq!(t.probabilities, vec![0.5, 0.5]);
    assert!(!t.degenerate);
}

#[test]
fn degenerate_weights_fall_back_to_uniform() {
    let set = [CandidateWeight::new(0.0, 10.0, 1.0), CandidateWeight::new(0.0, 5.0, 3.0), CandidateWeight::new(0.0, 1.0, 1.0)];
    let t = transition_probabilities(&set, [1.0, 1.0, 1.0]).unwrap();
    assert!(t.degenerate);
    assert!(t.probabilities.iter().all(|p| (*p - 1.0 / 3.0).abs() < 1e-15));
    assert!(transition_probabilities(&[], [1.0; 3]).is_err());
}

fn weight() -> impl Strategy<Value = CandidateWeight> {
    (0.01..=1.0f64, 0.5..150.0f64, 1e-6..50.0f64).prop_map(|(t, d, tau)| CandidateWeight::new(t, d, tau))
}

proptest! {
    #[test]
    fn scaling_pheromone_leaves_probabilities(set in prop::collection::vec(weight(), 1..10), k in 0.01..100.0f64) {
        // with b3 = 1 a common factor on tau scales every raw weight alike
        let b = [1.0, 1.0, 1.0];
        let scaled: Vec<CandidateWeight> =
            set.iter().map(|c| CandidateWeight::new(c.tcm, c.distance, c.pheromone * k)).collect();
        let p = transition_probabilities(&set, b).unwrap().probabilities;
        let q = transition_probabilities(&scaled, b).unwrap().probabilities;
        for (x, y) in p.iter().zip(&q) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn distance_only_prefers_nearest(set in prop::collection::vec(weight(), 1..10)) {
        let p = transition_probabilities(&set, [0.0, 1.0, 0.0]).unwrap().probabilities;
        let ids: Vec<NodeId> = (0..set.len()).map(NodeId).collect();
        let best = rank_candidates(&ids, &p)[0].0;
        let nearest = set.iter().map(|c| c.distance).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(set[best.0].distance, nearest);
    }

    #[test]
    fn ranking_is_descending_with_id_ties(probs in prop::collection::vec(0.0..1.0f64, 1..10)) {
        let ids: Vec<NodeId> = (0..probs.len()).map(NodeId).collect();
        let ranked = rank_candidates(&ids, &probs);
        for w in ranked.windows(2) {
            prop_assert!(w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0));
        }
    }

    #[test]
    fn heavier_use_means_more_pheromone(tau in 1e-6..10.0f64, rho in 0.0..=1.0f64, n in 0u32..50, d in 0.5..150.0f64) {
        let light = update_pheromone(tau, rho, n as f64, d);
        let heavy = update_pheromone(tau, rho, (n + 1) as f64, d);
        prop_assert!(heavy > light);
    }
}
