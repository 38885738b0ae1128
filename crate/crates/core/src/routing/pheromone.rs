use crate::topology::{NodeId, Topology};

/// One evaporation-and-deposit step on a single link.
pub fn update_pheromone(tau: f64, rho: f64, packets: f64, distance: f64) -> f64 {
    (1.0 - rho) * tau + packets / distance
}

/// Pheromone on every directed link, including links into the base station.
#[derive(Debug, Clone)]
pub struct PheromoneTable {
    v: usize,
    tau: Vec<f64>,
    floor: f64,
}

impl PheromoneTable {
    pub fn new(topology: &Topology, tau_init: f64, floor: f64) -> Self {
        assert!(tau_init > 0.0 && floor > 0.0);
        let v = topology.vertex_count();
        Self { v, tau: vec![tau_init; v * v], floor }
    }

    #[inline]
    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.tau[i.0 * self.v + j.0]
    }

    pub fn set(&mut self, i: NodeId, j: NodeId, tau: f64) {
        self.tau[i.0 * self.v + j.0] = tau.max(self.floor);
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    /// Applies one cycle to every link: `packets(i, j)` is the number of data
    /// packets sent on `i -> j` during the cycle, scaled by `deposit_scale`.
    pub fn step(
        &mut self,
        topology: &Topology,
        rho: f64,
        deposit_scale: f64,
        packets: impl Fn(NodeId, NodeId) -> u64,
    ) {
        for i in (0..topology.node_count()).map(NodeId) {
            for &j in topology.neighbors(i) {
                let d = topology.distance(i, j).max(f64::MIN_POSITIVE);
                let sent = packets(i, j) as f64 * deposit_scale;
                let next = update_pheromone(self.get(i, j), rho, sent, d);
                self.set(i, j, next);
            }
        }
    }

    pub fn min_over_links(&self, topology: &Topology) -> f64 {
        (0..topology.node_count())
            .map(NodeId)
            .flat_map(|i| topology.neighbors(i).iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .fold(f64::INFINITY, f64::min)
    }
}
