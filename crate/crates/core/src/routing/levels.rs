use crate::topology::{bfs, NodeId, Topology};

use super::RoutingError;

/// Minimal hop counts from a source, plus which vertices still lead to the
/// base station when moving strictly one level outward per hop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    source: NodeId,
    levels: Vec<Option<u32>>,
    leads_to_sink: Vec<bool>,
    sink: NodeId,
}

/// Levels by breadth-first search from `source` over the vertices accepted by
/// `usable` (the base station is always usable).
pub fn assign_levels(
    topology: &Topology,
    source: NodeId,
    usable: impl Fn(NodeId) -> bool,
) -> Result<LevelAssignment, RoutingError> {
    assign_levels_with_links(topology, source, usable, |_, _| true)
}

/// [`assign_levels`] where a forward hop `v -> w` only counts towards
/// reaching the base station when `link_ok(v, w)` holds. Levels themselves
/// are unaffected.
pub fn assign_levels_with_links(
    topology: &Topology,
    source: NodeId,
    usable: impl Fn(NodeId) -> bool,
    link_ok: impl Fn(NodeId, NodeId) -> bool,
) -> Result<LevelAssignment, RoutingError> {
    let sink = topology.sink();
    let ok = |v: NodeId| v == sink || usable(v);
    let levels = bfs(topology, source, ok);
    if levels[sink.0].is_none() {
        return Err(RoutingError::DisconnectedNetwork(source));
    }

    // walk levels outermost first so every forward target is settled
    let mut order: Vec<NodeId> = (0..topology.node_count())
        .map(NodeId)
        .filter(|v| levels[v.0].is_some())
        .collect();
    order.sort_by_key(|v| std::cmp::Reverse(levels[v.0]));
    let mut leads_to_sink = vec![false; topology.vertex_count()];
    leads_to_sink[sink.0] = true;
    for v in order {
        let lv = levels[v.0].unwrap();
        leads_to_sink[v.0] = topology.neighbors(v).iter().any(|&w| {
            (w == sink || (levels[w.0] == Some(lv + 1) && leads_to_sink[w.0])) && link_ok(v, w)
        });
    }
    Ok(LevelAssignment { source, levels, leads_to_sink, sink })
}

impl LevelAssignment {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn level(&self, v: NodeId) -> Option<u32> {
        self.levels[v.0]
    }

    pub fn levels(&self) -> &[Option<u32>] {
        &self.levels
    }

    /// Level of the base station, i.e. the source's hop distance to it.
    pub fn sink_level(&self) -> u32 {
        self.levels[self.sink.0].expect("sink reachable by construction")
    }

    pub fn leads_to_sink(&self, v: NodeId) -> bool {
        self.leads_to_sink[v.0]
    }

    /// Next-level neighbours of `v` that still lead to the base station, in
    /// ascending id order. The base station is a candidate whenever it is in
    /// range.
    pub fn forward_candidates<'a>(&'a self, topology: &'a Topology, v: NodeId) -> impl Iterator<Item = NodeId> + 'a {
        let next = self.levels[v.0].map(|l| l + 1);
        topology.neighbors(v).iter().copied().filter(move |&w| {
            w == self.sink || (next.is_some() && self.levels[w.0] == next && self.leads_to_sink[w.0])
        })
    }
}
