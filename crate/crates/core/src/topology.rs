//! Disk-graph topology over the deployed sensors plus the base station.
//!
//! Sensors occupy indices `0..node_count`; the base station is the extra
//! vertex at index `node_count`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{euclidean_distance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("a topology needs at least 2 sensor nodes, got {0}")]
    TooFewNodes(usize),
    #[error("disconnected network: {0}")]
    DisconnectedNetwork(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    positions: Vec<Point>,
    bs_position: Point,
    radio_range: f64,
    adjacency: Vec<Vec<NodeId>>,
    distances: Vec<f64>,
}

/// Builds the one-hop graph. Fails when no sensor can hear the base station.
pub fn build_topology(
    positions: &[Point],
    bs_position: Point,
    radio_range: f64,
) -> Result<Topology, TopologyError> {
    let n = positions.len();
    if n < 2 {
        return Err(TopologyError::TooFewNodes(n));
    }
    let all: Vec<Point> = positions.iter().copied().chain(std::iter::once(bs_position)).collect();
    let v = all.len();
    let mut distances = vec![0.0; v * v];
    let mut adjacency = vec![Vec::new(); v];
    for i in 0..v {
        for j in (i + 1)..v {
            let d = euclidean_distance(all[i], all[j]);
            distances[i * v + j] = d;
            distances[j * v + i] = d;
            if d <= radio_range {
                adjacency[i].push(NodeId(j));
                adjacency[j].push(NodeId(i));
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    if adjacency[n].is_empty() {
        return Err(TopologyError::DisconnectedNetwork(format!(
            "no sensor within {radio_range} m of the base station"
        )));
    }
    Ok(Topology {
        positions: positions.to_vec(),
        bs_position,
        radio_range,
        adjacency,
        distances,
    })
}

impl Topology {
    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    /// Number of graph vertices, sensors plus the base station.
    pub fn vertex_count(&self) -> usize {
        self.positions.len() + 1
    }

    pub fn sink(&self) -> NodeId {
        NodeId(self.positions.len())
    }

    pub fn is_sink(&self, id: NodeId) -> bool {
        id.0 == self.positions.len()
    }

    pub fn radio_range(&self) -> f64 {
        self.radio_range
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn bs_position(&self) -> Point {
        self.bs_position
    }

    pub fn position(&self, id: NodeId) -> Point {
        if self.is_sink(id) {
            self.bs_position
        } else {
            self.positions[id.0]
        }
    }

    /// One-hop neighbours in ascending id order. The sink appears last when in range.
    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.adjacency[id.0]
    }

    pub fn is_neighbor(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency[a.0].binary_search(&b).is_ok()
    }

    #[inline]
    pub fn distance(&self, a: NodeId, b: NodeId) -> f64 {
        self.distances[a.0 * self.vertex_count() + b.0]
    }

    /// Minimal hop counts from the sink over vertices accepted by `usable`.
    /// The sink itself is at hop 0; unreachable vertices are `None`.
    pub fn hops_to_sink(&self, usable: impl Fn(NodeId) -> bool) -> Vec<Option<u32>> {
        bfs(self, self.sink(), |v| self.is_sink(v) || usable(v))
    }

    /// Whether `from` reaches the sink through vertices accepted by `usable`.
    pub fn reaches_sink(&self, from: NodeId, usable: impl Fn(NodeId) -> bool) -> bool {
        bfs(self, from, |v| self.is_sink(v) || usable(v))[self.sink().0].is_some()
    }
}

/// Breadth-first hop distances from `start` over vertices accepted by `usable`.
pub(crate) fn bfs(topo: &Topology, start: NodeId, usable: impl Fn(NodeId) -> bool) -> Vec<Option<u32>> {
    let mut hops = vec![None; topo.vertex_count()];
    hops[start.0] = Some(0);
    let mut frontier = VecDeque::from([start]);
    while let Some(u) = frontier.pop_front() {
        let next = hops[u.0].unwrap() + 1;
        // the sink absorbs packets, it never relays
        if u != start && topo.is_sink(u) {
            continue;
        }
        for &w in topo.neighbors(u) {
            if hops[w.0].is_none() && usable(w) {
                hops[w.0] = Some(next);
                frontier.push_back(w);
            }
        }
    }
    hops
}
