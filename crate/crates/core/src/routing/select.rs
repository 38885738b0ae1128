use rand::Rng;

use crate::topology::NodeId;

/// Every ranked candidate was inadmissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

/// Sorts candidates by descending probability, ties by ascending id.
pub fn rank_candidates(candidates: &[NodeId], probabilities: &[f64]) -> Vec<(NodeId, f64)> {
    debug_assert_eq!(candidates.len(), probabilities.len());
    let mut ranked: Vec<(NodeId, f64)> = candidates.iter().copied().zip(probabilities.iter().copied()).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// First admissible candidate in rank order.
pub fn select_next_hop(ranked: &[(NodeId, f64)], admissible: impl Fn(NodeId) -> bool) -> Result<NodeId, Exhausted> {
    ranked.iter().map(|(id, _)| *id).find(|&id| admissible(id)).ok_or(Exhausted)
}

/// Samples proportionally to probability, discarding inadmissible draws and
/// re-sampling among the rest.
pub fn select_next_hop_roulette<R: Rng + ?Sized>(
    ranked: &[(NodeId, f64)],
    admissible: impl Fn(NodeId) -> bool,
    rng: &mut R,
) -> Result<NodeId, Exhausted> {
    let mut pool: Vec<(NodeId, f64)> = ranked.to_vec();
    while !pool.is_empty() {
        let total: f64 = pool.iter().map(|c| c.1).sum();
        let idx = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = pool.len() - 1;
            for (k, c) in pool.iter().enumerate() {
                if target < c.1 {
                    pick = k;
                    break;
                }
                target -= c.1;
            }
            pick
        } else {
            rng.random_range(0..pool.len())
        };
        let (id, _) = pool.remove(idx);
        if admissible(id) {
            return Ok(id);
        }
    }
    Err(Exhausted)
}
