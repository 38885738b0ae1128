use serde::{Deserialize, Serialize};

use crate::topology::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fate {
    InFlight,
    Delivered,
    DroppedOverflow,
    DroppedTimeout,
    DroppedMalicious,
}

impl Fate {
    pub fn is_terminal(self) -> bool {
        self != Fate::InFlight
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Fate::InFlight => "in_flight",
            Fate::Delivered => "delivered",
            Fate::DroppedOverflow => "dropped_overflow",
            Fate::DroppedTimeout => "dropped_timeout",
            Fate::DroppedMalicious => "dropped_malicious",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packet {
    pub id: u64,
    pub origin: NodeId,
    pub current_holder: NodeId,
    pub hop_trail: Vec<NodeId>,
    pub wait_cycles: u32,
    /// Cycles this packet must still sit in its current queue (delay faults).
    pub hold_cycles: u32,
    pub created_cycle: u64,
    /// Cycle in which the current holder received the packet.
    pub received_cycle: u64,
    /// The current holder still owes the previous hop an acknowledgement.
    pub ack_owed: bool,
    /// Injected by a flooding node; never credited as delivered.
    pub fake: bool,
    fate: Fate,
}

impl Packet {
    pub fn new(id: u64, origin: NodeId, created_cycle: u64) -> Self {
        Self {
            id,
            origin,
            current_holder: origin,
            hop_trail: vec![origin],
            wait_cycles: 0,
            hold_cycles: 0,
            created_cycle,
            received_cycle: created_cycle,
            ack_owed: false,
            fake: false,
            fate: Fate::InFlight,
        }
    }

    pub fn fake(id: u64, origin: NodeId, created_cycle: u64) -> Self {
        Self { fake: true, ..Self::new(id, origin, created_cycle) }
    }

    pub fn fate(&self) -> Fate {
        self.fate
    }

    /// Moves the packet to `to`, appending the hop.
    pub fn hop(&mut self, to: NodeId, cycle: u64) {
        debug_assert_eq!(self.fate, Fate::InFlight);
        self.current_holder = to;
        self.hop_trail.push(to);
        self.wait_cycles = 0;
        self.received_cycle = cycle;
        self.ack_owed = true;
    }

    /// The node this packet came from, if it has moved at all.
    pub fn previous_hop(&self) -> Option<NodeId> {
        let n = self.hop_trail.len();
        (n >= 2).then(|| self.hop_trail[n - 2])
    }

    /// Terminal transition. A packet leaves `InFlight` exactly once.
    pub fn finish(&mut self, fate: Fate) {
        assert!(fate.is_terminal(), "finish requires a terminal fate");
        assert_eq!(self.fate, Fate::InFlight, "packet {} already finished", self.id);
        self.fate = fate;
    }

    /// A fresh copy carrying the same trail, as re-emitted by a duplicating node.
    pub fn duplicate(&self, id: u64, cycle: u64) -> Self {
        Self {
            id,
            created_cycle: cycle,
            received_cycle: cycle,
            ack_owed: false,
            wait_cycles: 0,
            hold_cycles: 0,
            fate: Fate::InFlight,
            ..self.clone()
        }
    }
}
