//! Level structure, trust-congestion metric, transition probabilities,
//! next-hop selection and pheromone bookkeeping.

mod levels;
mod metric;
mod pheromone;
mod select;

pub use levels::{assign_levels, assign_levels_with_links, LevelAssignment};
pub use metric::{
    transition_probabilities, trust_congestion_metric, CandidateWeight, Transition,
};
pub use pheromone::{update_pheromone, PheromoneTable};
pub use select::{rank_candidates, select_next_hop, select_next_hop_roulette, Exhausted};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RoutingError {
    #[error("source {0} cannot reach the base station")]
    DisconnectedNetwork(crate::topology::NodeId),
    #[error("no valid next-hop candidates")]
    NoValidCandidates,
}
