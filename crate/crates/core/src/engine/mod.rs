//! Simulation lifecycle: deployment, the per-cycle state machine, fault
//! injection, baseline protocols and lifetime metrics.

mod faults;
mod metrics;
mod protocol;
mod sim;

pub use faults::assign_faults;
pub use metrics::{extract_milestones, CycleRecord, MilestoneRounds, SimMetrics, Termination, MILESTONE_PERCENTS};
pub use protocol::Protocol;
pub use sim::{deploy_nodes, far_corner_node, run_baseline, run_simulation, RouteRecord, SimError, Simulation};
