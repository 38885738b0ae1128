//! Trust-based, congestion-aware ant colony routing for wireless sensor
//! networks.
//!
//! The crate has two layers. The protocol primitives live in [`trust`],
//! [`congestion`], [`routing`] and [`energy`]; they are plain functions and
//! small owned types that can be used on their own. [`engine`] wires them
//! into a deterministic, seeded, cycle-based simulator with fault injection
//! and baseline protocols, and [`experiment`] runs protocol × replicate
//! sweeps and writes CSV/JSON results.
//!
//! ```no_run
//! use tcaco::{engine::{run_baseline, Protocol}, SimConfig};
//!
//! let metrics = run_baseline(SimConfig::default(), Protocol::TcAco).unwrap();
//! println!("30% dead at round {:?}", metrics.milestones.p30);
//! ```

pub mod config;
pub mod congestion;
pub mod energy;
pub mod engine;
pub mod experiment;
pub mod geometry;
pub mod node;
pub mod packet;
pub mod routing;
pub mod topology;
pub mod trust;

pub use config::SimConfig;
pub use engine::{Protocol, SimMetrics, Simulation};
pub use geometry::Point;
pub use topology::NodeId;
