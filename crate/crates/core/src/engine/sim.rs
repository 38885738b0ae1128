//! The cycle-based simulator.
//!
//! One [`Simulation`] owns every piece of mutable state of a run and is
//! strictly single-threaded. All randomness comes from one ChaCha8 stream
//! seeded with `rng_seed`, drawn in this order:
//!
//! 1. deployment: `x` then `y` for each node in id order;
//! 2. fault assignment, one draw per sampled node of each fractional spec;
//! 3. per cycle: the source draw (random source policy only), then one draw
//!    per packet received by a dropping node and one per roulette pick, in
//!    processing order.
//!
//! A cycle runs: packet generation at the source, flood injection, forwarding
//! node by node ordered by level from the current source (ids ascending
//! within a level, FIFO within a queue) with receipt-side fault behaviour,
//! queue aging and timeouts, cycle close of the flow counters, pheromone
//! update, trust and congestion recomputation, and metric recording.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::{ConfigError, FaultBehavior, ForwardingMode, SimConfig, SourcePolicy};
use crate::congestion::Enqueue;
use crate::energy::{rx_cost, tx_cost};
use crate::geometry::Point;
use crate::node::NodeState;
use crate::packet::{Fate, Packet};
use crate::routing::{
    assign_levels_with_links, rank_candidates, select_next_hop, select_next_hop_roulette, transition_probabilities,
    trust_congestion_metric, CandidateWeight, LevelAssignment, PheromoneTable,
};
use crate::topology::{build_topology, NodeId, Topology, TopologyError};
use crate::trust::{TrustInputs, TrustStats, TrustTable};

use super::faults::assign_faults;
use super::metrics::{extract_milestones, CycleRecord, SimMetrics, Termination, MILESTONE_PERCENTS};
use super::protocol::Protocol;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A packet that reached a terminal fate, for route dumps.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteRecord {
    /// Cycle in which the packet settled.
    pub cycle: u64,
    pub created_cycle: u64,
    pub packet_id: u64,
    pub fate: Fate,
    pub fake: bool,
    pub trail: Vec<NodeId>,
}

/// Uniform random positions over the field, `x` then `y` per node.
pub fn deploy_nodes<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Vec<Point> {
    (0..cfg.node_count)
        .map(|_| {
            let x = rng.random::<f64>() * cfg.field_width;
            let y = rng.random::<f64>() * cfg.field_height;
            Point::new(x, y)
        })
        .collect()
}

/// Node closest to the field corner farthest from the base station.
pub fn far_corner_node(cfg: &SimConfig, positions: &[Point]) -> NodeId {
    let bs = cfg.sink_position();
    let corners = [
        Point::new(0.0, 0.0),
        Point::new(cfg.field_width, 0.0),
        Point::new(0.0, cfg.field_height),
        Point::new(cfg.field_width, cfg.field_height),
    ];
    let mut corner = corners[0];
    for c in &corners[1..] {
        if c.distance(&bs) > corner.distance(&bs) {
            corner = *c;
        }
    }
    let mut best = 0;
    for (i, p) in positions.iter().enumerate() {
        if p.distance(&corner) < positions[best].distance(&corner) {
            best = i;
        }
    }
    NodeId(best)
}

pub struct Simulation {
    cfg: SimConfig,
    protocol: Protocol,
    topology: Topology,
    nodes: Vec<NodeState>,
    rng: ChaCha8Rng,
    cycle: u64,
    stats: TrustStats,
    trust: TrustTable,
    congestion: Vec<Option<f64>>,
    pheromone: PheromoneTable,
    link_packets: Vec<u64>,
    next_packet_id: u64,
    fixed_source: Option<NodeId>,
    current_source: Option<NodeId>,
    level_cache: BTreeMap<NodeId, Option<LevelAssignment>>,
    min_hops: Vec<Option<u32>>,
    metrics: SimMetrics,
    in_flight: u64,
    record: CycleRecord,
    routes: Option<Vec<RouteRecord>>,
    finished: Option<Termination>,
    initial_energy_total: f64,
}

impl Simulation {
    /// Validates `cfg`, deploys the nodes from the seeded stream and
    /// assigns faults.
    pub fn new(cfg: SimConfig, protocol: Protocol) -> Result<Self, SimError> {
        let cfg = cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let positions = deploy_nodes(&cfg, &mut rng);
        Self::build(cfg, protocol, positions, rng)
    }

    /// Like [`Simulation::new`] with a hand-placed deployment. `node_count`
    /// is taken from `positions`.
    pub fn with_positions(mut cfg: SimConfig, protocol: Protocol, positions: Vec<Point>) -> Result<Self, SimError> {
        cfg.node_count = positions.len();
        let cfg = cfg.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        Self::build(cfg, protocol, positions, rng)
    }

    fn build(cfg: SimConfig, protocol: Protocol, positions: Vec<Point>, mut rng: ChaCha8Rng) -> Result<Self, SimError> {
        let topology = build_topology(&positions, cfg.sink_position(), cfg.radio_range)?;
        let n = positions.len();
        let fixed_source = match cfg.source_policy {
            SourcePolicy::FarCorner => Some(far_corner_node(&cfg, &positions)),
            SourcePolicy::Fixed(id) => Some(NodeId(id)),
            SourcePolicy::RandomPerRound => None,
        };
        let excluded: Vec<usize> = fixed_source.iter().map(|s| s.0).collect();
        let behaviors = assign_faults(&cfg.fault_spec, n, &excluded, &mut rng);
        let nodes: Vec<NodeState> = positions
            .iter()
            .zip(behaviors)
            .enumerate()
            .map(|(i, (p, behavior))| {
                let mut node = NodeState::new(NodeId(i), *p, cfg.initial_energy, cfg.energy_threshold, cfg.queue_capacity);
                node.behavior = behavior;
                node
            })
            .collect();
        let v = topology.vertex_count();
        Ok(Self {
            protocol,
            stats: TrustStats::new(n),
            trust: TrustTable::bootstrap(&topology, cfg.trust_threshold),
            congestion: vec![Some(0.0); n],
            pheromone: PheromoneTable::new(&topology, cfg.tau_init, cfg.tau_floor),
            link_packets: vec![0; v * v],
            next_packet_id: 0,
            fixed_source,
            current_source: None,
            level_cache: BTreeMap::new(),
            min_hops: Vec::new(),
            metrics: SimMetrics::new(n),
            in_flight: 0,
            record: CycleRecord::default(),
            routes: None,
            finished: None,
            initial_energy_total: cfg.initial_energy * n as f64,
            nodes,
            topology,
            rng,
            cycle: 0,
            cfg,
        })
    }

    /// Keep a [`RouteRecord`] for every packet that reaches a terminal fate.
    pub fn record_routes(&mut self, on: bool) {
        self.routes = on.then(Vec::new);
    }

    pub fn routes(&self) -> &[RouteRecord] {
        self.routes.as_deref().unwrap_or(&[])
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    pub fn trust_table(&self) -> &TrustTable {
        &self.trust
    }

    pub fn trust_stats(&self) -> &TrustStats {
        &self.stats
    }

    pub fn pheromone(&self) -> &PheromoneTable {
        &self.pheromone
    }

    /// Congestion index each node will use next cycle; `None` for nodes
    /// classified malicious.
    pub fn congestion_indices(&self) -> &[Option<f64>] {
        &self.congestion
    }

    pub fn fixed_source(&self) -> Option<NodeId> {
        self.fixed_source
    }

    pub fn metrics(&self) -> &SimMetrics {
        &self.metrics
    }

    pub fn in_flight(&self) -> u64 {
        self.in_flight
    }

    pub fn initial_energy_total(&self) -> f64 {
        self.initial_energy_total
    }

    pub fn termination(&self) -> Option<Termination> {
        self.finished
    }

    pub fn is_finished(&self) -> bool {
        self.finished.is_some()
    }

    /// Runs until termination and returns the metrics with milestones filled in.
    pub fn run(mut self) -> SimMetrics {
        while self.run_cycle().is_ok() {}
        self.finish_metrics();
        self.metrics
    }

    pub fn run_to_end(&mut self) -> &SimMetrics {
        while self.run_cycle().is_ok() {}
        self.finish_metrics();
        &self.metrics
    }

    fn finish_metrics(&mut self) {
        self.metrics.milestones = extract_milestones(&self.metrics.dead_counts(), self.nodes.len());
        self.metrics.termination = self.finished.unwrap_or(Termination::MaxCycles);
    }

    fn finish(&mut self, t: Termination) -> Termination {
        self.finished = Some(t);
        t
    }

    /// Executes one cycle. Returns the termination reason once the run is over.
    pub fn run_cycle(&mut self) -> Result<CycleRecord, Termination> {
        if let Some(t) = self.finished {
            return Err(t);
        }
        if self.cycle >= self.cfg.max_cycles {
            return Err(self.finish(Termination::MaxCycles));
        }
        self.level_cache.clear();
        if self.protocol == Protocol::NaiveMinhop {
            let nodes = &self.nodes;
            self.min_hops = self.topology.hops_to_sink(|v| nodes[v.0].can_transmit());
        }
        let source = self.pick_source()?;
        self.cycle += 1;
        let cycle = self.cycle;
        self.current_source = Some(source);
        self.record = CycleRecord { cycle, source: Some(source.0), ..Default::default() };

        let mut launches: Vec<Vec<Packet>> = vec![Vec::new(); self.nodes.len()];
        for _ in 0..self.cfg.packets_per_round {
            let p = Packet::new(self.fresh_id(), source, cycle);
            launches[source.0].push(p);
            self.count_generated();
        }
        for k in 0..self.nodes.len() {
            if let FaultBehavior::Flood { r } = self.nodes[k].behavior {
                if self.nodes[k].can_transmit() {
                    for _ in 0..r {
                        let p = Packet::fake(self.fresh_id(), NodeId(k), cycle);
                        launches[k].push(p);
                        self.count_generated();
                    }
                }
            }
        }

        for u in self.processing_order(source) {
            let launched = std::mem::take(&mut launches[u.0]);
            self.process_node(u, launched);
        }

        for k in 0..self.nodes.len() {
            let dropped = self.nodes[k].queue.tick_wait_and_drop(self.cfg.wc_max);
            for mut p in dropped {
                self.settle_ack(NodeId(k), &mut p, false);
                self.record.dropped_timeout += 1;
                self.retire(p);
            }
        }
        for node in &mut self.nodes {
            node.queue.close_cycle();
        }

        let v = self.topology.vertex_count();
        let counts = std::mem::take(&mut self.link_packets);
        self.pheromone
            .step(&self.topology, self.cfg.rho, self.cfg.pheromone_deposit_scale, |i, j| counts[i.0 * v + j.0]);
        self.link_packets = vec![0; v * v];

        self.refresh_trust_and_congestion(source);

        let dead = self.nodes.iter().filter(|n| !n.can_transmit()).count();
        self.record.dead_nodes = dead;
        self.record.total_energy_j = self.nodes.iter().map(|n| n.energy()).sum();
        self.record.in_flight = self.in_flight;
        let rec = self.record;
        self.metrics.cycles.push(rec);

        let last = *MILESTONE_PERCENTS.last().unwrap() as usize;
        if dead * 100 >= last * self.nodes.len() {
            self.finish(Termination::LifetimeReached);
        }
        Ok(rec)
    }

    fn fresh_id(&mut self) -> u64 {
        let id = self.next_packet_id;
        self.next_packet_id += 1;
        id
    }

    fn count_generated(&mut self) {
        self.record.generated += 1;
        self.in_flight += 1;
    }

    fn retire(&mut self, p: Packet) {
        debug_assert!(p.fate().is_terminal());
        self.in_flight -= 1;
        if let Some(routes) = &mut self.routes {
            routes.push(RouteRecord {
                cycle: self.cycle,
                created_cycle: p.created_cycle,
                packet_id: p.id,
                fate: p.fate(),
                fake: p.fake,
                trail: p.hop_trail,
            });
        }
    }

    /// Whether `v` may relay under the current protocol.
    fn usable(&self, v: NodeId) -> bool {
        self.nodes[v.0].can_transmit() && !(self.protocol.uses_trust() && self.trust.is_malicious(v))
    }

    /// Whether a hop `v -> w` may carry data under the current protocol.
    fn link_usable(&self, v: NodeId, w: NodeId) -> bool {
        !self.protocol.uses_trust() || self.topology.is_sink(w) || self.trust.is_link_trustworthy(v, w)
    }

    /// Nodes with a path of usable links to the base station.
    fn reaches_sink_over_links(&self) -> Vec<bool> {
        let sink = self.topology.sink();
        let mut seen = vec![false; self.topology.vertex_count()];
        seen[sink.0] = true;
        let mut frontier = VecDeque::from([sink]);
        while let Some(w) = frontier.pop_front() {
            for &v in self.topology.neighbors(w) {
                if !seen[v.0] && self.usable(v) && self.link_usable(v, w) {
                    seen[v.0] = true;
                    frontier.push_back(v);
                }
            }
        }
        seen
    }

    fn pick_source(&mut self) -> Result<NodeId, Termination> {
        if let Some(src) = self.fixed_source {
            if !self.nodes[src.0].can_transmit() {
                return Err(self.finish(Termination::SourceDead));
            }
            if !self.source_reaches_sink(src) {
                return Err(self.finish(Termination::SinkUnreachable));
            }
            return Ok(src);
        }
        let pool: Vec<NodeId> = if self.protocol == Protocol::NaiveMinhop {
            (0..self.nodes.len())
                .map(NodeId)
                .filter(|v| self.nodes[v.0].can_transmit() && !self.nodes[v.0].is_malicious() && self.min_hops[v.0].is_some())
                .collect()
        } else {
            let reach = self.reaches_sink_over_links();
            let coarse: Vec<NodeId> = (0..self.nodes.len())
                .map(NodeId)
                .filter(|v| self.nodes[v.0].can_transmit() && !self.nodes[v.0].is_malicious())
                .filter(|v| {
                    reach[v.0]
                        || self.topology.neighbors(*v).iter().any(|&w| reach[w.0] && self.link_usable(*v, w))
                })
                .collect();
            if self.protocol.uses_trust() {
                // the coarse test ignores that hops must move outward by level
                coarse.into_iter().filter(|&v| self.source_reaches_sink(v)).collect()
            } else {
                coarse
            }
        };
        if pool.is_empty() {
            return Err(self.finish(Termination::SinkUnreachable));
        }
        let idx = self.rng.random_range(0..pool.len());
        Ok(pool[idx])
    }

    fn source_reaches_sink(&mut self, src: NodeId) -> bool {
        if self.protocol == Protocol::NaiveMinhop {
            return self.min_hops[src.0].is_some();
        }
        self.ensure_levels(src);
        self.level_cache[&src].as_ref().is_some_and(|view| view.leads_to_sink(src))
    }

    fn ensure_levels(&mut self, origin: NodeId) {
        if !self.level_cache.contains_key(&origin) {
            let view =
                assign_levels_with_links(&self.topology, origin, |v| self.usable(v), |v, w| self.link_usable(v, w)).ok();
            self.level_cache.insert(origin, view);
        }
    }

    fn processing_order(&mut self, source: NodeId) -> Vec<NodeId> {
        let mut order: Vec<NodeId> = (0..self.nodes.len()).map(NodeId).collect();
        if self.protocol == Protocol::NaiveMinhop {
            let hops = &self.min_hops;
            order.sort_by_key(|v| (hops[v.0].is_none(), std::cmp::Reverse(hops[v.0]), *v));
        } else {
            self.ensure_levels(source);
            match &self.level_cache[&source] {
                Some(view) => order.sort_by_key(|v| (view.level(*v).is_none(), view.level(*v), *v)),
                None => {}
            }
        }
        order
    }

    /// Candidate list for packets from `origin` held at `u`, best first.
    fn ranked_candidates(&mut self, u: NodeId, origin: NodeId) -> Vec<(NodeId, f64)> {
        let sink = self.topology.sink();
        if self.protocol == Protocol::NaiveMinhop {
            let Some(h) = self.min_hops[u.0] else { return Vec::new() };
            return self
                .topology
                .neighbors(u)
                .iter()
                .copied()
                .filter(|w| h > 0 && self.min_hops[w.0] == Some(h - 1))
                .map(|w| (w, 1.0))
                .collect();
        }
        self.ensure_levels(origin);
        let Some(view) = self.level_cache[&origin].as_ref() else { return Vec::new() };
        let filter_trust = self.protocol.uses_trust();
        let candidates: Vec<NodeId> = view
            .forward_candidates(&self.topology, u)
            .filter(|&w| {
                w == sink || !filter_trust || (self.trust.is_link_trustworthy(u, w) && !self.trust.is_malicious(w))
            })
            .collect();
        if candidates.is_empty() {
            return Vec::new();
        }
        match self.protocol {
            Protocol::TrustGreedy => {
                let mut by_distance: Vec<(NodeId, f64)> =
                    candidates.iter().map(|&w| (w, self.topology.distance(u, w))).collect();
                by_distance.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
                by_distance
            }
            _ => {
                let betas = if self.protocol == Protocol::DistAco {
                    [0.0, self.cfg.beta2, self.cfg.beta3]
                } else {
                    [self.cfg.beta1, self.cfg.beta2, self.cfg.beta3]
                };
                let weights: Vec<CandidateWeight> = candidates
                    .iter()
                    .map(|&w| {
                        let tcm = if w == sink {
                            trust_congestion_metric(1.0, 0.0, self.cfg.alpha, self.cfg.congestion_polarity)
                        } else {
                            let t = self.trust.trust(u, w).unwrap_or(1.0);
                            let ci = self.congestion[w.0].unwrap_or(0.0);
                            trust_congestion_metric(t, ci, self.cfg.alpha, self.cfg.congestion_polarity)
                        };
                        CandidateWeight::new(tcm, self.topology.distance(u, w), self.pheromone.get(u, w))
                    })
                    .collect();
                let transition = transition_probabilities(&weights, betas).expect("non-empty candidate set");
                rank_candidates(&candidates, &transition.probabilities)
            }
        }
    }

    fn admissible(&self, w: NodeId) -> bool {
        if self.topology.is_sink(w) {
            return true;
        }
        let node = &self.nodes[w.0];
        match self.protocol {
            Protocol::NaiveMinhop => node.can_transmit(),
            _ => node.can_transmit() && !node.queue.is_full(),
        }
    }

    fn process_node(&mut self, u: NodeId, launched: Vec<Packet>) {
        let queued = self.nodes[u.0].queue.drain_all();
        if queued.is_empty() && launched.is_empty() {
            return;
        }
        let limit = self.cfg.per_cycle_forward_limit.unwrap_or(usize::MAX);
        let mut ranked: BTreeMap<NodeId, Vec<(NodeId, f64)>> = BTreeMap::new();
        let mut sent = 0usize;
        let mut kept_queue = VecDeque::new();
        let mut kept_launch = Vec::new();

        let total_queued = queued.len();
        for (idx, p) in queued.into_iter().chain(launched).enumerate() {
            let from_queue = idx < total_queued;
            let hop = if p.hold_cycles > 0 || sent >= limit || !self.nodes[u.0].can_transmit() {
                None
            } else {
                if !ranked.contains_key(&p.origin) {
                    let list = self.ranked_candidates(u, p.origin);
                    ranked.insert(p.origin, list);
                }
                self.choose(&ranked[&p.origin])
            };
            match hop {
                Some(w) => {
                    self.transmit(u, w, p);
                    sent += 1;
                }
                None if from_queue => kept_queue.push_back(p),
                None => kept_launch.push(p),
            }
        }
        self.nodes[u.0].queue.restore(kept_queue);
        for p in kept_launch {
            self.enqueue(u, p);
        }
    }

    fn choose(&mut self, ranked: &[(NodeId, f64)]) -> Option<NodeId> {
        if ranked.is_empty() {
            return None;
        }
        let stochastic = self.cfg.forwarding_mode == ForwardingMode::StochasticRoulette
            && matches!(self.protocol, Protocol::TcAco | Protocol::DistAco);
        let pick = if stochastic {
            let open: Vec<NodeId> = ranked.iter().map(|c| c.0).filter(|&w| self.admissible(w)).collect();
            select_next_hop_roulette(ranked, |w| open.contains(&w), &mut self.rng)
        } else {
            select_next_hop(ranked, |w| self.admissible(w))
        };
        pick.ok()
    }

    fn transmit(&mut self, u: NodeId, w: NodeId, mut p: Packet) {
        let radio = self.cfg.radio();
        let bits = self.cfg.packet_size_bits;
        let d = self.topology.distance(u, w);
        self.nodes[u.0].debit(tx_cost(bits, d, &radio));
        self.nodes[u.0].queue.record_outflow(1);
        self.link_packets[u.0 * self.topology.vertex_count() + w.0] += 1;
        self.settle_ack(u, &mut p, true);

        if self.topology.is_sink(w) {
            p.hop(w, self.cycle);
            p.ack_owed = false;
            if p.fake {
                p.finish(Fate::DroppedMalicious);
                self.record.dropped_malicious += 1;
            } else {
                p.finish(Fate::Delivered);
                self.record.delivered += 1;
            }
            self.retire(p);
            return;
        }

        self.nodes[w.0].debit(rx_cost(bits, &radio));
        self.nodes[w.0].queue.record_inflow(1);
        self.stats.get_mut(u, w).record_sent();
        if self.nodes[w.0].is_malicious() {
            self.record.forwarded_to_faulty += 1;
        }
        p.hop(w, self.cycle);
        self.receive(w, p);
    }

    fn receive(&mut self, w: NodeId, mut p: Packet) {
        match self.nodes[w.0].behavior {
            FaultBehavior::Drop { p: prob } => {
                let roll = self.rng.random::<f64>();
                if roll < prob {
                    self.settle_ack(w, &mut p, false);
                    p.finish(Fate::DroppedMalicious);
                    self.record.dropped_malicious += 1;
                    self.retire(p);
                    return;
                }
                self.enqueue(w, p);
            }
            FaultBehavior::Duplicate { k } => {
                let copies: Vec<Packet> = (0..k).map(|_| p.duplicate(self.fresh_id(), self.cycle)).collect();
                self.enqueue(w, p);
                for c in copies {
                    self.count_generated();
                    self.enqueue(w, c);
                }
            }
            FaultBehavior::Delay { extra } => {
                p.hold_cycles = extra;
                self.enqueue(w, p);
            }
            FaultBehavior::Honest | FaultBehavior::Flood { .. } => self.enqueue(w, p),
        }
    }

    fn enqueue(&mut self, at: NodeId, p: Packet) {
        if let Enqueue::RejectedFull(mut p) = self.nodes[at.0].queue.enqueue(p) {
            self.settle_ack(at, &mut p, false);
            self.record.dropped_overflow += 1;
            self.retire(p);
        }
    }

    /// Resolves the acknowledgement `holder` owes the previous hop of `p`.
    fn settle_ack(&mut self, holder: NodeId, p: &mut Packet, acked: bool) {
        if !p.ack_owed {
            return;
        }
        p.ack_owed = false;
        let Some(prev) = p.previous_hop() else { return };
        if acked {
            let latency = (self.cycle - p.received_cycle + 1) as f64;
            self.stats.get_mut(prev, holder).record_ack(latency);
            let radio = self.cfg.radio();
            let bits = self.cfg.ack_bits();
            let d = self.topology.distance(holder, prev);
            self.nodes[holder.0].debit(tx_cost(bits, d, &radio));
            self.nodes[prev.0].debit(rx_cost(bits, &radio));
        } else {
            let timeout = self.ack_timeout();
            self.stats.get_mut(prev, holder).record_loss(timeout);
        }
    }

    /// Latency charged to a packet that is never acknowledged: one cycle
    /// beyond the longest an honest holder can keep it.
    fn ack_timeout(&self) -> f64 {
        (self.cfg.wc_max + 2) as f64
    }

    fn refresh_trust_and_congestion(&mut self, source: NodeId) {
        let energies: Vec<f64> = self.nodes.iter().map(|n| n.energy()).collect();
        let no_levels = vec![None; self.topology.vertex_count()];
        let levels = match self.level_cache.get(&source) {
            Some(Some(view)) => view.levels(),
            _ => &no_levels,
        };
        let inputs = TrustInputs {
            energies: &energies,
            initial_energy: self.cfg.initial_energy,
            weights: self.cfg.trust_weights,
            threshold: self.cfg.trust_threshold,
            polarity: self.cfg.latency_polarity,
            levels,
            rule: self.cfg.classification,
        };
        self.trust = TrustTable::recompute(&self.topology, &self.stats, &inputs).expect("weights validated");
        let next = self.cycle + 1;
        for (k, node) in self.nodes.iter().enumerate() {
            self.congestion[k] = if self.trust.is_malicious(NodeId(k)) {
                None
            } else {
                Some(node.queue.congestion_index(next, self.cfg.congestion_window))
            };
        }
    }
}

/// Runs the full TC-ACO pipeline on `cfg`.
pub fn run_simulation(cfg: SimConfig) -> Result<SimMetrics, SimError> {
    run_baseline(cfg, Protocol::TcAco)
}

/// Runs `protocol` on `cfg`. Deployment and fault assignment depend only on
/// the seed, so every protocol sees the same network for the same config.
pub fn run_baseline(cfg: SimConfig, protocol: Protocol) -> Result<SimMetrics, SimError> {
    Ok(Simulation::new(cfg, protocol)?.run())
}
