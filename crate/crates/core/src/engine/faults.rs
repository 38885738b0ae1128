use rand::Rng;

use crate::config::{FaultBehavior, FaultSpec, FaultTarget};

/// Resolves the fault assignment into one behaviour per node. Explicit node
/// lists are applied in order; fractions are drawn from the nodes still
/// honest and not excluded. A node keeps the first behaviour assigned to it.
pub fn assign_faults<R: Rng + ?Sized>(
    specs: &[FaultSpec],
    node_count: usize,
    excluded: &[usize],
    rng: &mut R,
) -> Vec<FaultBehavior> {
    let mut out = vec![FaultBehavior::Honest; node_count];
    let mut assigned = vec![false; node_count];
    let eligible_total = (0..node_count).filter(|i| !excluded.contains(i)).count();
    for spec in specs {
        match &spec.target {
            FaultTarget::Nodes(ids) => {
                for &id in ids {
                    if id < node_count && !assigned[id] && !excluded.contains(&id) {
                        out[id] = spec.behavior;
                        assigned[id] = true;
                    }
                }
            }
            FaultTarget::Fraction(f) => {
                let mut pool: Vec<usize> = (0..node_count)
                    .filter(|i| !assigned[*i] && !excluded.contains(i))
                    .collect();
                let want = ((f * eligible_total as f64).round() as usize).min(pool.len());
                // partial Fisher-Yates: the first `want` slots are the sample
                for k in 0..want {
                    let pick = rng.random_range(k..pool.len());
                    pool.swap(k, pick);
                }
                let mut chosen = pool[..want].to_vec();
                chosen.sort_unstable();
                for id in chosen {
                    out[id] = spec.behavior;
                    assigned[id] = true;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fraction_of_eligible_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = [FaultSpec::fraction(0.2, FaultBehavior::Drop { p: 0.8 })];
        let out = assign_faults(&spec, 50, &[3], &mut rng);
        let faulty: Vec<_> = (0..50).filter(|i| !out[*i].is_honest()).collect();
        assert_eq!(faulty.len(), 10);
        assert!(!faulty.contains(&3));
    }

    #[test]
    fn explicit_nodes_take_precedence() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = [
            FaultSpec::nodes(vec![1, 2], FaultBehavior::Flood { r: 3 }),
            FaultSpec::fraction(1.0, FaultBehavior::Delay { extra: 1 }),
        ];
        let out = assign_faults(&spec, 5, &[0], &mut rng);
        assert_eq!(out[0], FaultBehavior::Honest);
        assert_eq!(out[1], FaultBehavior::Flood { r: 3 });
        assert_eq!(out[2], FaultBehavior::Flood { r: 3 });
        assert_eq!(out[3], FaultBehavior::Delay { extra: 1 });
        assert_eq!(out[4], FaultBehavior::Delay { extra: 1 });
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = [FaultSpec::fraction(0.3, FaultBehavior::Drop { p: 1.0 })];
        let a = assign_faults(&spec, 40, &[], &mut ChaCha8Rng::seed_from_u64(11));
        let b = assign_faults(&spec, 40, &[], &mut ChaCha8Rng::seed_from_u64(11));
        assert_eq!(a, b);
    }
}
