use crate::config::FaultBehavior;
use crate::congestion::NodeQueue;
use crate::energy::Battery;
use crate::geometry::Point;
use crate::topology::NodeId;

/// A deployed sensor.
#[derive(Debug, Clone)]
pub struct NodeState {
    pub id: NodeId,
    pub position: Point,
    pub battery: Battery,
    pub queue: NodeQueue,
    pub behavior: FaultBehavior,
}

impl NodeState {
    pub fn new(id: NodeId, position: Point, energy: f64, threshold: f64, capacity: usize) -> Self {
        Self {
            id,
            position,
            battery: Battery::new(energy, threshold),
            queue: NodeQueue::new(capacity),
            behavior: FaultBehavior::Honest,
        }
    }

    pub fn energy(&self) -> f64 {
        self.battery.energy()
    }

    /// Alive for transmission purposes: energy at or above the threshold.
    pub fn can_transmit(&self) -> bool {
        self.battery.can_transmit()
    }

    pub fn is_alive(&self) -> bool {
        self.can_transmit()
    }

    pub fn debit(&mut self, joules: f64) {
        self.battery.debit(joules);
    }

    pub fn is_malicious(&self) -> bool {
        !self.behavior.is_honest()
    }
}
