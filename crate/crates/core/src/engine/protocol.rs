use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Routing protocols sharing the same energy, queue and fault machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// Trust filter, trust-congestion metric, distance and pheromone.
    TcAco,
    /// Distance and pheromone only; no trust filter, no congestion term.
    DistAco,
    /// Trust-filtered nearest admissible next-level neighbour.
    TrustGreedy,
    /// Fewest hops to the base station, blind to trust and full buffers.
    NaiveMinhop,
}

impl Protocol {
    pub const ALL: [Protocol; 4] = [Protocol::TcAco, Protocol::DistAco, Protocol::TrustGreedy, Protocol::NaiveMinhop];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::TcAco => "tc_aco",
            Protocol::DistAco => "dist_aco",
            Protocol::TrustGreedy => "trust_greedy",
            Protocol::NaiveMinhop => "naive_minhop",
        }
    }

    pub fn uses_trust(self) -> bool {
        matches!(self, Protocol::TcAco | Protocol::TrustGreedy)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown protocol `{s}` (expected one of tc_aco, dist_aco, trust_greedy, naive_minhop)"))
    }
}
