//! Direct trust between one-hop neighbours.
//!
//! Evidence is collected per directed sensor link `i -> j`: how many packets
//! `i` handed to `j`, how many `j` acknowledged by forwarding them on, and how
//! long each acknowledgement took. Trust is a weighted mean of three metrics
//! in `[0, 1]`: the pair's residual energy, the acknowledgement ratio and a
//! latency score relative to `i`'s other candidates.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ClassificationRule, LatencyPolarity};
use crate::topology::{NodeId, Topology};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum TrustError {
    #[error("trust weights sum to zero")]
    ZeroWeights,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LinkStats {
    pub packets_sent: u64,
    pub acks_received: u64,
    latency_sum: f64,
    latency_count: u64,
    ack_latency_sum: f64,
}

impl LinkStats {
    pub fn record_sent(&mut self) {
        self.packets_sent += 1;
    }

    /// An acknowledgement that arrived after `latency` cycles.
    pub fn record_ack(&mut self, latency: f64) {
        debug_assert!(latency >= 0.0);
        debug_assert!(self.acks_received < self.packets_sent);
        self.acks_received += 1;
        self.ack_latency_sum += latency;
        self.record_latency(latency);
    }

    /// A packet that was never acknowledged, censored at `timeout` cycles.
    pub fn record_loss(&mut self, timeout: f64) {
        self.record_latency(timeout);
    }

    fn record_latency(&mut self, latency: f64) {
        self.latency_sum += latency;
        self.latency_count += 1;
    }

    pub fn latency_samples(&self) -> u64 {
        self.latency_count
    }

    /// Mean over acknowledged packets and censored losses.
    pub fn mean_latency(&self) -> Option<f64> {
        (self.latency_count > 0).then(|| self.latency_sum / self.latency_count as f64)
    }

    /// Mean over acknowledged packets only.
    pub fn mean_ack_latency(&self) -> Option<f64> {
        (self.acks_received > 0).then(|| self.ack_latency_sum / self.acks_received as f64)
    }
}

/// Interaction evidence for every directed sensor-to-sensor link.
#[derive(Debug, Clone)]
pub struct TrustStats {
    n: usize,
    links: Vec<LinkStats>,
}

impl TrustStats {
    pub fn new(node_count: usize) -> Self {
        Self { n: node_count, links: vec![LinkStats::default(); node_count * node_count] }
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> &LinkStats {
        &self.links[i.0 * self.n + j.0]
    }

    pub fn get_mut(&mut self, i: NodeId, j: NodeId) -> &mut LinkStats {
        &mut self.links[i.0 * self.n + j.0]
    }
}

/// Acknowledgement ratio of `i -> j`; 1 before any packet was sent.
pub fn packet_transmission_ratio(stats: &TrustStats, i: NodeId, j: NodeId) -> f64 {
    let s = stats.get(i, j);
    if s.packets_sent == 0 {
        1.0
    } else {
        s.acks_received as f64 / s.packets_sent as f64
    }
}

/// Scores a link's mean latency against the mean of its peers.
pub fn latency_ratio_score(latency_j: Option<f64>, mean_others: f64, polarity: LatencyPolarity) -> f64 {
    let Some(lj) = latency_j else { return 1.0 };
    if lj <= 0.0 {
        return 1.0;
    }
    match polarity {
        LatencyPolarity::Normalized => (mean_others / lj).min(1.0),
        LatencyPolarity::Literal => {
            if mean_others <= 0.0 {
                1.0
            } else {
                (lj / mean_others).clamp(0.0, 1.0)
            }
        }
    }
}

/// Latency score of `i -> j` against `i`'s links to `peers`. The reference is
/// the peers' mean acknowledgement delay, so losses only count against the
/// link that suffered them. Peers without acknowledgements are ignored; with
/// none left the reference is one cycle.
pub fn latency_score(
    stats: &TrustStats,
    i: NodeId,
    j: NodeId,
    peers: impl IntoIterator<Item = NodeId>,
    polarity: LatencyPolarity,
) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for k in peers {
        if k == j {
            continue;
        }
        if let Some(m) = stats.get(i, k).mean_ack_latency() {
            sum += m;
            count += 1;
        }
    }
    let others = if count == 0 { 1.0 } else { sum / count as f64 };
    latency_ratio_score(stats.get(i, j).mean_latency(), others, polarity)
}

/// Mean residual energy of the pair, normalized by the initial energy.
pub fn energy_metric(e_i: f64, e_j: f64, e_init: f64) -> f64 {
    (((e_i + e_j) / 2.0) / e_init).clamp(0.0, 1.0)
}

pub fn compute_trust(ne: f64, ptr: f64, pl: f64, weights: [f64; 3]) -> Result<f64, TrustError> {
    let [a1, a2, a3] = weights;
    let total = a1 + a2 + a3;
    if total <= 0.0 {
        return Err(TrustError::ZeroWeights);
    }
    Ok(((a1 * ne + a2 * ptr + a3 * pl) / total).clamp(0.0, 1.0))
}

/// Trustworthy iff strictly above the threshold.
pub fn is_trustworthy(trust: f64, threshold: f64) -> bool {
    trust > threshold
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeClass {
    Trusted,
    Malicious,
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeClass::Trusted => "trusted",
            NodeClass::Malicious => "malicious",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkTrust {
    pub ne: f64,
    pub ptr: f64,
    pub pl: f64,
    pub value: f64,
    /// Whether the link has carried at least one packet.
    pub evidence: bool,
}

/// Trust values of every directed sensor link plus the node classification.
#[derive(Debug, Clone)]
pub struct TrustTable {
    n: usize,
    threshold: f64,
    links: Vec<Option<LinkTrust>>,
    classes: Vec<NodeClass>,
}

/// Inputs that change from cycle to cycle when the table is rebuilt.
pub struct TrustInputs<'a> {
    pub energies: &'a [f64],
    pub initial_energy: f64,
    pub weights: [f64; 3],
    pub threshold: f64,
    pub polarity: LatencyPolarity,
    /// Level of every vertex relative to the current source; peers of
    /// `i -> j` are `i`'s other neighbours at `j`'s level.
    pub levels: &'a [Option<u32>],
    pub rule: ClassificationRule,
}

impl TrustTable {
    /// Table where every link holds the bootstrap trust of full batteries and
    /// no evidence.
    pub fn bootstrap(topology: &Topology, threshold: f64) -> Self {
        let n = topology.node_count();
        let mut links = vec![None; n * n];
        for i in 0..n {
            for &j in topology.neighbors(NodeId(i)) {
                if j.0 < n {
                    links[i * n + j.0] = Some(LinkTrust { ne: 1.0, ptr: 1.0, pl: 1.0, value: 1.0, evidence: false });
                }
            }
        }
        let mut table = Self { n, threshold, links, classes: vec![NodeClass::Trusted; n] };
        table.classify(ClassificationRule::AllLinks);
        table
    }

    pub fn recompute(
        topology: &Topology,
        stats: &TrustStats,
        inputs: &TrustInputs<'_>,
    ) -> Result<Self, TrustError> {
        let n = topology.node_count();
        let mut links = vec![None; n * n];
        for i in (0..n).map(NodeId) {
            let sensors = topology.neighbors(i).iter().copied().filter(|k| k.0 < n);
            for j in sensors.clone() {
                let ne = energy_metric(inputs.energies[i.0], inputs.energies[j.0], inputs.initial_energy);
                let ptr = packet_transmission_ratio(stats, i, j);
                let level = inputs.levels[j.0];
                let peers = sensors.clone().filter(|k| *k != j && inputs.levels[k.0] == level);
                let pl = latency_score(stats, i, j, peers, inputs.polarity);
                let value = compute_trust(ne, ptr, pl, inputs.weights)?;
                let evidence = stats.get(i, j).packets_sent > 0;
                links[i.0 * n + j.0] = Some(LinkTrust { ne, ptr, pl, value, evidence });
            }
        }
        let mut table = Self { n, threshold: inputs.threshold, links, classes: vec![NodeClass::Trusted; n] };
        table.classify(inputs.rule);
        Ok(table)
    }

    /// Builds a table from explicit trust values. Links absent from `values`
    /// do not exist.
    pub fn from_values(n: usize, threshold: f64, values: &[(NodeId, NodeId, f64)]) -> Self {
        let mut links = vec![None; n * n];
        for &(i, j, value) in values {
            links[i.0 * n + j.0] = Some(LinkTrust { ne: f64::NAN, ptr: f64::NAN, pl: f64::NAN, value, evidence: true });
        }
        let mut table = Self { n, threshold, links, classes: vec![NodeClass::Trusted; n] };
        table.classify(ClassificationRule::AllLinks);
        table
    }

    /// A node is malicious iff none of its voting incoming links is
    /// trustworthy. Under [`ClassificationRule::EvidenceOnly`] a node without
    /// any voting link stays trusted.
    fn classify(&mut self, rule: ClassificationRule) {
        for j in 0..self.n {
            let mut voters = (0..self.n)
                .filter_map(|i| self.links[i * self.n + j].as_ref())
                .filter(|l| rule == ClassificationRule::AllLinks || l.evidence)
                .peekable();
            let trusted = match voters.peek() {
                None => rule == ClassificationRule::EvidenceOnly,
                Some(_) => voters.any(|l| is_trustworthy(l.value, self.threshold)),
            };
            self.classes[j] = if trusted { NodeClass::Trusted } else { NodeClass::Malicious };
        }
    }


    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn link(&self, i: NodeId, j: NodeId) -> Option<&LinkTrust> {
        self.links.get(i.0 * self.n + j.0).and_then(Option::as_ref)
    }

    pub fn trust(&self, i: NodeId, j: NodeId) -> Option<f64> {
        self.link(i, j).map(|l| l.value)
    }

    pub fn is_link_trustworthy(&self, i: NodeId, j: NodeId) -> bool {
        self.trust(i, j).is_some_and(|t| is_trustworthy(t, self.threshold))
    }

    pub fn class(&self, node: NodeId) -> NodeClass {
        self.classes[node.0]
    }

    pub fn is_malicious(&self, node: NodeId) -> bool {
        self.classes[node.0] == NodeClass::Malicious
    }

    pub fn classes(&self) -> &[NodeClass] {
        &self.classes
    }

    /// `(i, j, link)` for every existing link, row-major.
    pub fn iter_links(&self) -> impl Iterator<Item = (NodeId, NodeId, &LinkTrust)> {
        self.links.iter().enumerate().filter_map(move |(idx, l)| {
            l.as_ref().map(|l| (NodeId(idx / self.n), NodeId(idx % self.n), l))
        })
    }
}
