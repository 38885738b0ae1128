//! Simulation configuration and its validation.
//!
//! Every field has a default, so a JSON config file only needs to name the
//! keys it wants to change. [`SimConfig::validate`] reports every violated
//! constraint at once rather than stopping at the first.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

/// How the congestion term enters the trust-congestion metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CongestionPolarity {
    /// `alpha * (1 - CI) + (1 - alpha) * T`: congestion lowers the metric.
    #[default]
    Inverted,
    /// `alpha * CI + (1 - alpha) * T`, exactly as printed.
    Literal,
}

/// How the latency ratio is turned into a trust metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LatencyPolarity {
    /// `min(1, mean_others / latency_j)`: faster than peers scores 1.
    #[default]
    Normalized,
    /// `clamp(latency_j / mean_others, 0, 1)`.
    Literal,
}

/// Which incoming links decide whether a node is malicious.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationRule {
    /// Only links that have carried traffic vote; a node nobody has used yet
    /// stays trusted.
    #[default]
    EvidenceOnly,
    /// Every incoming link votes, including untested ones at their bootstrap value.
    AllLinks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ForwardingMode {
    /// Walk the candidates in descending probability order.
    #[default]
    DeterministicRank,
    /// Sample candidates proportionally to their probability.
    StochasticRoulette,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SourcePolicy {
    /// The node closest to the field corner farthest from the base station.
    #[default]
    FarCorner,
    /// A fixed node id.
    Fixed(usize),
    /// A fresh honest node drawn every round among those that can reach the sink.
    RandomPerRound,
}

/// Misbehaviour attached to a faulty node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaultBehavior {
    Honest,
    /// Drop every received packet with probability `p`.
    Drop { p: f64 },
    /// Re-emit `k` extra copies of every received packet.
    Duplicate { k: u32 },
    /// Inject `r` fake packets per cycle.
    Flood { r: u32 },
    /// Hold every received packet for `extra` cycles before forwarding it.
    Delay { extra: u32 },
}

impl FaultBehavior {
    pub fn is_honest(&self) -> bool {
        matches!(self, FaultBehavior::Honest)
    }
}

/// Which nodes a fault behaviour is attached to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultTarget {
    Nodes(Vec<usize>),
    /// Fraction of the eligible (non-source) nodes, drawn from the run's RNG.
    Fraction(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultSpec {
    pub target: FaultTarget,
    pub behavior: FaultBehavior,
}

impl FaultSpec {
    pub fn fraction(fraction: f64, behavior: FaultBehavior) -> Self {
        Self { target: FaultTarget::Fraction(fraction), behavior }
    }

    pub fn nodes(nodes: Vec<usize>, behavior: FaultBehavior) -> Self {
        Self { target: FaultTarget::Nodes(nodes), behavior }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub field_width: f64,
    pub field_height: f64,
    pub node_count: usize,
    pub radio_range: f64,
    /// Base station position; `None` places it at the midpoint of the bottom edge.
    pub bs_position: Option<Point>,
    pub initial_energy: f64,
    pub energy_threshold: f64,
    pub trust_threshold: f64,
    pub trust_weights: [f64; 3],
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub rho: f64,
    pub tau_init: f64,
    pub tau_floor: f64,
    pub pheromone_deposit_scale: f64,
    pub queue_capacity: usize,
    pub wc_max: u32,
    pub packets_per_round: usize,
    pub packet_size_bits: u64,
    pub ack_size_fraction: f64,
    pub e_elec: f64,
    pub eps_fs: f64,
    pub congestion_polarity: CongestionPolarity,
    pub latency_polarity: LatencyPolarity,
    pub classification: ClassificationRule,
    /// Number of past cycles averaged by the congestion index; `None` uses all history.
    pub congestion_window: Option<usize>,
    pub forwarding_mode: ForwardingMode,
    /// Packets a node may forward per cycle; `None` drains the whole queue.
    pub per_cycle_forward_limit: Option<usize>,
    pub source_policy: SourcePolicy,
    pub fault_spec: Vec<FaultSpec>,
    pub max_cycles: u64,
    pub rng_seed: u64,
    pub replicate_count: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            field_width: 200.0,
            field_height: 200.0,
            node_count: 50,
            radio_range: 100.0,
            bs_position: None,
            initial_energy: 1.0,
            energy_threshold: 0.01,
            trust_threshold: 0.5,
            trust_weights: [1.0, 1.0, 1.0],
            alpha: 0.5,
            beta1: 1.0,
            beta2: 1.0,
            beta3: 1.0,
            rho: 0.1,
            tau_init: 1.0,
            tau_floor: 1e-6,
            pheromone_deposit_scale: 1.0,
            queue_capacity: 10,
            wc_max: 3,
            packets_per_round: 20,
            packet_size_bits: 2000,
            ack_size_fraction: 0.1,
            e_elec: 50e-9,
            eps_fs: 100e-12,
            congestion_polarity: CongestionPolarity::Inverted,
            latency_polarity: LatencyPolarity::Normalized,
            classification: ClassificationRule::EvidenceOnly,
            congestion_window: None,
            forwarding_mode: ForwardingMode::DeterministicRank,
            per_cycle_forward_limit: None,
            source_policy: SourcePolicy::FarCorner,
            fault_spec: vec![FaultSpec::fraction(0.2, FaultBehavior::Drop { p: 0.8 })],
            max_cycles: 10_000,
            rng_seed: 1,
            replicate_count: 1,
        }
    }
}

/// A single violated configuration constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid configuration: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path} at line {line}, column {column} (key `{key}`): {message}")]
    Parse {
        path: String,
        /// Dotted path of the offending key, `.` for the document root.
        key: String,
        line: usize,
        column: usize,
        message: String,
    },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; ")
}

impl ConfigError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            ConfigError::Invalid(v) => v,
            _ => &[],
        }
    }
}

impl SimConfig {
    /// Parses a JSON document; absent keys take their defaults.
    pub fn from_json_str(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            let inner = e.into_inner();
            ConfigError::Parse {
                path: origin.to_string(),
                key,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Base station position after applying the default.
    pub fn sink_position(&self) -> Point {
        self.bs_position
            .unwrap_or(Point::new(self.field_width / 2.0, 0.0))
    }

    pub fn ack_bits(&self) -> u64 {
        (self.packet_size_bits as f64 * self.ack_size_fraction).round() as u64
    }

    pub fn radio(&self) -> crate::energy::RadioParams {
        crate::energy::RadioParams { e_elec: self.e_elec, eps_fs: self.eps_fs }
    }

    /// Returns the config unchanged if it is valid, otherwise every violation.
    pub fn validate(self) -> Result<Self, ConfigError> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ConfigError::Invalid(violations))
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |field: &str, message: String| {
            out.push(Violation { field: field.to_string(), message });
        };

        let unit = |v: f64| v.is_finite() && (0.0..=1.0).contains(&v);
        for (name, value) in [
            ("alpha", self.alpha),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("beta3", self.beta3),
            ("rho", self.rho),
            ("trust_threshold", self.trust_threshold),
        ] {
            if !unit(value) {
                push(name, format!("{name} out of [0,1]"));
            }
        }
        for (idx, w) in self.trust_weights.iter().enumerate() {
            if !unit(*w) {
                push("trust_weights", format!("trust_weights[{idx}] out of [0,1]"));
            }
        }
        if self.trust_weights.iter().sum::<f64>() <= 0.0 {
            push("trust_weights", "trust_weights must not all be zero".into());
        }
        if !(self.tau_init > 0.0 && self.tau_init.is_finite()) {
            push("tau_init", "tau_init must be positive".into());
        }
        if !(self.tau_floor > 0.0 && self.tau_floor.is_finite()) {
            push("tau_floor", "tau_floor must be positive".into());
        }
        if !(self.pheromone_deposit_scale >= 0.0 && self.pheromone_deposit_scale.is_finite()) {
            push("pheromone_deposit_scale", "pheromone_deposit_scale must be non-negative".into());
        }
        if self.node_count < 2 {
            push("node_count", "node_count must be at least 2".into());
        }
        if self.queue_capacity < 1 {
            push("queue_capacity", "queue_capacity must be at least 1".into());
        }
        if self.wc_max < 1 {
            push("wc_max", "wc_max must be at least 1".into());
        }
        if self.packets_per_round < 1 {
            push("packets_per_round", "packets_per_round must be at least 1".into());
        }
        if self.packet_size_bits < 1 {
            push("packet_size_bits", "packet_size_bits must be at least 1".into());
        }
        if self.replicate_count < 1 {
            push("replicate_count", "replicate_count must be at least 1".into());
        }
        if !(self.field_width > 0.0 && self.field_width.is_finite()) {
            push("field_width", "field_width must be positive".into());
        }
        if !(self.field_height > 0.0 && self.field_height.is_finite()) {
            push("field_height", "field_height must be positive".into());
        }
        if !(self.radio_range > 0.0 && self.radio_range.is_finite()) {
            push("radio_range", "radio_range must be positive".into());
        }
        if !(self.initial_energy > 0.0 && self.initial_energy.is_finite()) {
            push("initial_energy", "initial_energy must be positive".into());
        }
        if !(self.energy_threshold >= 0.0) {
            push("energy_threshold", "energy_threshold must be non-negative".into());
        }
        if !(self.energy_threshold < self.initial_energy) {
            push("energy_threshold", "energy_threshold must be below initial_energy".into());
        }
        if !(self.e_elec > 0.0 && self.e_elec.is_finite()) {
            push("e_elec", "e_elec must be positive".into());
        }
        if !(self.eps_fs > 0.0 && self.eps_fs.is_finite()) {
            push("eps_fs", "eps_fs must be positive".into());
        }
        if !(self.ack_size_fraction >= 0.0 && self.ack_size_fraction.is_finite()) {
            push("ack_size_fraction", "ack_size_fraction must be non-negative".into());
        }
        if self.congestion_window == Some(0) {
            push("congestion_window", "congestion_window must be at least 1".into());
        }
        if self.per_cycle_forward_limit == Some(0) {
            push("per_cycle_forward_limit", "per_cycle_forward_limit must be at least 1".into());
        }
        if let Some(p) = self.bs_position {
            if !(p.x.is_finite() && p.y.is_finite()) {
                push("bs_position", "bs_position must be finite".into());
            }
        }
        if let SourcePolicy::Fixed(id) = self.source_policy {
            if id >= self.node_count {
                push("source_policy", format!("source node {id} out of range"));
            }
        }
        for (idx, fault) in self.fault_spec.iter().enumerate() {
            match &fault.target {
                FaultTarget::Fraction(f) if !unit(*f) => {
                    push("fault_spec", format!("fault_spec[{idx}] fraction out of [0,1]"))
                }
                FaultTarget::Nodes(ids) => {
                    for id in ids {
                        if *id >= self.node_count {
                            push("fault_spec", format!("fault_spec[{idx}] node {id} out of range"));
                        }
                        if self.source_policy == SourcePolicy::Fixed(*id) {
                            push("fault_spec", format!("fault_spec[{idx}] assigns a fault to the source"));
                        }
                    }
                }
                _ => {}
            }
            match fault.behavior {
                FaultBehavior::Drop { p } if !unit(p) => {
                    push("fault_spec", format!("fault_spec[{idx}] drop probability out of [0,1]"))
                }
                FaultBehavior::Duplicate { k } if k < 1 => {
                    push("fault_spec", format!("fault_spec[{idx}] duplicate copies must be at least 1"))
                }
                _ => {}
            }
        }
        out
    }
}
