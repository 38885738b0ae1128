//! Protocol × replicate sweeps and their output files.
//!
//! Replicate `k` of every protocol runs with seed `base_seed + k`, so all
//! protocols see the same deployments. Runs go to a rayon pool; files are
//! written afterwards by the calling thread, summary last.

mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, SimConfig, Violation};
use crate::engine::{Protocol, RouteRecord, SimError, SimMetrics, Simulation};
use crate::trust::TrustTable;

pub use output::{
    emit_outputs, lower_median, per_cycle_csv, route_dump, summarize, trust_csv, ProtocolSummary, ReplicateSummary,
    Summary, PER_CYCLE_HEADER, TRUST_HEADER,
};

/// Which files an experiment writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitSet {
    pub per_cycle: bool,
    pub summary: bool,
    pub trust: bool,
    pub routes: bool,
}

impl Default for EmitSet {
    fn default() -> Self {
        Self { per_cycle: true, summary: true, trust: false, routes: false }
    }
}

impl EmitSet {
    pub const NONE: EmitSet = EmitSet { per_cycle: false, summary: false, trust: false, routes: false };
}

impl FromStr for EmitSet {
    type Err = String;

    /// Comma-separated subset of `per-cycle,summary,trust,routes`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = EmitSet::NONE;
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "per-cycle" => set.per_cycle = true,
                "summary" => set.summary = true,
                "trust" => set.trust = true,
                "routes" => set.routes = true,
                other => return Err(format!("unknown output kind `{other}` (expected per-cycle, summary, trust, routes)")),
            }
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// Base configuration; its `rng_seed` is the base seed.
    pub config: SimConfig,
    pub protocols: Vec<Protocol>,
    pub replicates: usize,
    pub out_dir: PathBuf,
    pub emit: EmitSet,
}

impl ExperimentSpec {
    pub fn new(config: SimConfig, protocols: Vec<Protocol>, out_dir: impl Into<PathBuf>) -> Self {
        let replicates = config.replicate_count;
        Self { config, protocols, replicates, out_dir: out_dir.into(), emit: EmitSet::default() }
    }

    pub fn base_seed(&self) -> u64 {
        self.config.rng_seed
    }

    pub fn seed_for(&self, replicate: usize) -> u64 {
        self.base_seed().wrapping_add(replicate as u64)
    }

    pub fn validate(self) -> Result<Self, ConfigError> {
        let mut violations = self.config.violations();
        if self.replicates < 1 {
            violations.push(Violation { field: "replicates".into(), message: "replicates must be at least 1".into() });
        }
        if self.protocols.is_empty() {
            violations.push(Violation { field: "protocols".into(), message: "at least one protocol is required".into() });
        }
        let mut seen = Vec::new();
        for p in &self.protocols {
            if seen.contains(p) {
                violations.push(Violation { field: "protocols".into(), message: format!("protocol {p} listed twice") });
            }
            seen.push(*p);
        }
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ConfigError::Invalid(violations))
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub protocols: Option<Vec<Protocol>>,
    pub replicates: Option<usize>,
    pub seed: Option<u64>,
    pub max_cycles: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub emit: Option<EmitSet>,
}

/// Reads the config file (or the defaults when `path` is `None`), applies the
/// overrides and validates the result.
pub fn load_experiment(path: Option<&Path>, overrides: Overrides) -> Result<ExperimentSpec, ConfigError> {
    let mut config = match path {
        Some(p) => SimConfig::from_json_file(p)?,
        None => SimConfig::default(),
    };
    if let Some(seed) = overrides.seed {
        config.rng_seed = seed;
    }
    if let Some(m) = overrides.max_cycles {
        config.max_cycles = m;
    }
    if let Some(r) = overrides.replicates {
        config.replicate_count = r;
    }
    let protocols = overrides.protocols.unwrap_or_else(|| Protocol::ALL.to_vec());
    let out_dir = overrides.out_dir.unwrap_or_else(|| PathBuf::from("out"));
    let mut spec = ExperimentSpec::new(config, protocols, out_dir);
    if let Some(e) = overrides.emit {
        spec.emit = e;
    }
    spec.validate()
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("run {protocol} replicate {replicate} (seed {seed}) failed: {source}")]
    Run {
        protocol: Protocol,
        replicate: usize,
        seed: u64,
        #[source]
        source: SimError,
    },
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ExperimentError {
    /// 1 for configuration problems, 2 for failed runs, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 1,
            ExperimentError::Run { source: SimError::Config(_), .. } => 1,
            ExperimentError::Run { .. } => 2,
            ExperimentError::Io { .. } => 3,
        }
    }
}

/// Everything one simulation produced that an output file may need.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub protocol: Protocol,
    pub replicate: usize,
    pub seed: u64,
    pub metrics: SimMetrics,
    /// Final trust table, kept when trust dumps are requested.
    pub trust: Option<TrustTable>,
    pub routes: Vec<RouteRecord>,
}

pub fn run_one(spec: &ExperimentSpec, protocol: Protocol, replicate: usize) -> Result<RunOutput, ExperimentError> {
    let seed = spec.seed_for(replicate);
    let cfg = SimConfig { rng_seed: seed, ..spec.config.clone() };
    let fail = |source| ExperimentError::Run { protocol, replicate, seed, source };
    let mut sim = Simulation::new(cfg, protocol).map_err(fail)?;
    sim.record_routes(spec.emit.routes);
    sim.run_to_end();
    let trust = spec.emit.trust.then(|| sim.trust_table().clone());
    let routes = sim.routes().to_vec();
    let metrics = sim.metrics().clone();
    Ok(RunOutput { protocol, replicate, seed, metrics, trust, routes })
}

/// Runs every protocol × replicate pair in parallel. Results come back in
/// protocol-major order; the first failure in that order is reported.
pub fn run_all(spec: &ExperimentSpec) -> Result<Vec<RunOutput>, ExperimentError> {
    let jobs: Vec<(Protocol, usize)> = spec
        .protocols
        .iter()
        .flat_map(|&p| (0..spec.replicates).map(move |r| (p, r)))
        .collect();
    jobs.into_par_iter().map(|(p, r)| run_one(spec, p, r)).collect::<Vec<_>>().into_iter().collect()
}

/// Runs the sweep and writes the requested files. Returns the written paths.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<PathBuf>, ExperimentError> {
    let runs = run_all(spec)?;
    emit_outputs(spec, &runs)
}
