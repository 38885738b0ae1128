use serde::{Deserialize, Serialize};

/// Dead-node percentages tracked as lifetime milestones.
pub const MILESTONE_PERCENTS: [u32; 7] = [1, 10, 20, 30, 40, 50, 60];

/// Counters for a single cycle. Packet counts are events within the cycle;
/// `in_flight`, `dead_nodes` and `total_energy_j` are readings at its end.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub cycle: u64,
    pub generated: u64,
    pub delivered: u64,
    pub dropped_overflow: u64,
    pub dropped_timeout: u64,
    pub dropped_malicious: u64,
    pub in_flight: u64,
    pub dead_nodes: usize,
    pub total_energy_j: f64,
    /// Data packets handed to a fault-injected node.
    pub forwarded_to_faulty: u64,
    pub source: Option<usize>,
}

impl CycleRecord {
    pub fn drops(&self) -> u64 {
        self.dropped_overflow + self.dropped_timeout + self.dropped_malicious
    }
}

/// Round at which each dead-node percentage was first reached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilestoneRounds {
    pub p1: Option<u64>,
    pub p10: Option<u64>,
    pub p20: Option<u64>,
    pub p30: Option<u64>,
    pub p40: Option<u64>,
    pub p50: Option<u64>,
    pub p60: Option<u64>,
}

impl MilestoneRounds {
    pub fn from_array(v: [Option<u64>; 7]) -> Self {
        let [p1, p10, p20, p30, p40, p50, p60] = v;
        Self { p1, p10, p20, p30, p40, p50, p60 }
    }

    pub fn to_array(&self) -> [Option<u64>; 7] {
        [self.p1, self.p10, self.p20, self.p30, self.p40, self.p50, self.p60]
    }

    pub fn get(&self, percent: u32) -> Option<u64> {
        MILESTONE_PERCENTS
            .iter()
            .position(|p| *p == percent)
            .and_then(|i| self.to_array()[i])
    }

    /// Reached milestones never decrease along the percentage list, and an
    /// unreached milestone is never followed by a reached one.
    pub fn is_monotone(&self) -> bool {
        let mut last = 0u64;
        let mut open = false;
        for m in self.to_array() {
            match m {
                Some(r) if open || r < last => return false,
                Some(r) => last = r,
                None => open = true,
            }
        }
        true
    }
}

/// First round where `dead / node_count >= p / 100` for each milestone.
/// `dead_counts[k]` is the dead count at the end of round `k + 1`.
pub fn extract_milestones(dead_counts: &[usize], node_count: usize) -> MilestoneRounds {
    let mut out = [None; 7];
    for (slot, &p) in out.iter_mut().zip(MILESTONE_PERCENTS.iter()) {
        *slot = dead_counts
            .iter()
            .position(|&dead| dead as u64 * 100 >= p as u64 * node_count as u64)
            .map(|idx| idx as u64 + 1);
    }
    MilestoneRounds::from_array(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MaxCycles,
    /// The final milestone percentage of nodes is dead.
    LifetimeReached,
    SourceDead,
    SinkUnreachable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimMetrics {
    pub node_count: usize,
    pub cycles: Vec<CycleRecord>,
    pub milestones: MilestoneRounds,
    pub termination: Termination,
}

impl SimMetrics {
    pub fn new(node_count: usize) -> Self {
        Self {
            node_count,
            cycles: Vec::new(),
            milestones: MilestoneRounds::default(),
            termination: Termination::MaxCycles,
        }
    }

    pub fn rounds(&self) -> u64 {
        self.cycles.len() as u64
    }

    pub fn total_generated(&self) -> u64 {
        self.cycles.iter().map(|c| c.generated).sum()
    }

    pub fn total_delivered(&self) -> u64 {
        self.cycles.iter().map(|c| c.delivered).sum()
    }

    pub fn dead_counts(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.dead_nodes).collect()
    }

    /// Cycles at which packet conservation, energy monotonicity or dead-count
    /// monotonicity is broken.
    pub fn invariant_violations(&self, initial_energy_total: f64) -> Vec<String> {
        let mut out = Vec::new();
        let mut in_flight = 0u64;
        let mut energy = initial_energy_total;
        let mut dead = 0usize;
        let (mut gen, mut fin) = (0u64, 0u64);
        for c in &self.cycles {
            gen += c.generated;
            fin += c.delivered + c.drops();
            if in_flight + c.generated != c.delivered + c.drops() + c.in_flight {
                out.push(format!("cycle {}: per-cycle packet balance broken", c.cycle));
            }
            if gen != fin + c.in_flight {
                out.push(format!("cycle {}: cumulative packet balance broken", c.cycle));
            }
            if c.total_energy_j > energy {
                out.push(format!("cycle {}: total energy increased", c.cycle));
            }
            if c.dead_nodes < dead {
                out.push(format!("cycle {}: dead count decreased", c.cycle));
            }
            in_flight = c.in_flight;
            energy = c.total_energy_j;
            dead = c.dead_nodes;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_percent_of_fifty_needs_one_death() {
        let m = extract_milestones(&[0, 0, 1, 1, 5], 50);
        assert_eq!(m.p1, Some(3));
        assert_eq!(m.p10, Some(5));
        assert_eq!(m.p20, None);
        assert!(m.is_monotone());
    }

    #[test]
    fn unreached_is_absent() {
        let m = extract_milestones(&[0, 3, 10, 24], 50);
        assert_eq!(m.p60, None);
        assert_eq!(m.p50, None);
        assert_eq!(m.p40, Some(4));
        assert_eq!(m.p20, Some(3));
    }

    #[test]
    fn simultaneous_death() {
        let m = extract_milestones(&[0, 0, 0, 50], 50);
        assert!(m.to_array().iter().all(|r| *r == Some(4)));
        assert_eq!(extract_milestones(&[], 50), MilestoneRounds::default());
    }

    #[test]
    fn monotonicity_check() {
        assert!(!MilestoneRounds::from_array([Some(5), Some(3), None, None, None, None, None]).is_monotone());
        assert!(!MilestoneRounds::from_array([Some(5), None, Some(9), None, None, None, None]).is_monotone());
    }

    #[test]
    fn lookup_by_percent() {
        let m = extract_milestones(&[0, 15], 50);
        assert_eq!(m.get(30), Some(2));
        assert_eq!(m.get(31), None);
    }
}
