use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{MilestoneRounds, RouteRecord, SimMetrics, Termination};
use crate::trust::{is_trustworthy, TrustTable};

use super::{ExperimentError, ExperimentSpec, RunOutput};

pub const PER_CYCLE_HEADER: &str =
    "cycle,generated,delivered,dropped_overflow,dropped_timeout,dropped_malicious,dead_nodes,total_energy_j";

pub const TRUST_HEADER: &str = "i,j,ne,ptr,pl,T_ij,classification";

pub fn per_cycle_csv(metrics: &SimMetrics) -> String {
    let mut out = String::with_capacity(64 * (metrics.cycles.len() + 1));
    out.push_str(PER_CYCLE_HEADER);
    out.push('\n');
    for c in &metrics.cycles {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            c.cycle,
            c.generated,
            c.delivered,
            c.dropped_overflow,
            c.dropped_timeout,
            c.dropped_malicious,
            c.dead_nodes,
            c.total_energy_j
        );
    }
    out
}

/// One row per directed sensor link; the last column is the link's verdict.
pub fn trust_csv(table: &TrustTable) -> String {
    let mut out = String::from(TRUST_HEADER);
    out.push('\n');
    for (i, j, l) in table.iter_links() {
        let verdict = if is_trustworthy(l.value, table.threshold()) { "trustworthy" } else { "untrusted" };
        let _ = writeln!(out, "{},{},{},{},{},{},{}", i, j, l.ne, l.ptr, l.pl, l.value, verdict);
    }
    out
}

/// `cycle packet_id fate fake trail`, the trail as dash-joined ids with the
/// base station written `bs`.
pub fn route_dump(routes: &[RouteRecord], sink_index: usize) -> String {
    let mut out = String::new();
    for r in routes {
        let trail: Vec<String> = r
            .trail
            .iter()
            .map(|v| if v.0 == sink_index { "bs".to_string() } else { v.0.to_string() })
            .collect();
        let _ = writeln!(out, "{} {} {} {} {}", r.cycle, r.packet_id, r.fate.as_str(), u8::from(r.fake), trail.join("-"));
    }
    out
}

/// Lower median with unreached (`None`) ranked above every reached round.
pub fn lower_median(values: &[Option<u64>]) -> Option<u64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| match (a, b) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    v[(v.len() - 1) / 2]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSummary {
    pub seed: u64,
    pub rounds: u64,
    pub termination: Termination,
    pub generated: u64,
    pub delivered: u64,
    pub milestone_rounds: MilestoneRounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSummary {
    /// Keyed by replicate index.
    pub replicates: BTreeMap<usize, ReplicateSummary>,
    pub median: MilestoneRounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub base_seed: u64,
    pub replicates: usize,
    pub protocols: BTreeMap<String, ProtocolSummary>,
}

impl Summary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Median milestone rows, one per protocol in name order.
    pub fn median_grid(&self) -> Vec<(String, [Option<u64>; 7])> {
        self.protocols.iter().map(|(k, v)| (k.clone(), v.median.to_array())).collect()
    }
}

pub fn summarize(spec: &ExperimentSpec, runs: &[RunOutput]) -> Summary {
    let mut protocols = BTreeMap::new();
    for p in &spec.protocols {
        let mine: Vec<&RunOutput> = runs.iter().filter(|r| r.protocol == *p).collect();
        let replicates: BTreeMap<usize, ReplicateSummary> = mine
            .iter()
            .map(|r| {
                let m = &r.metrics;
                let s = ReplicateSummary {
                    seed: r.seed,
                    rounds: m.rounds(),
                    termination: m.termination,
                    generated: m.total_generated(),
                    delivered: m.total_delivered(),
                    milestone_rounds: m.milestones,
                };
                (r.replicate, s)
            })
            .collect();
        let mut median = [None; 7];
        for (k, slot) in median.iter_mut().enumerate() {
            let column: Vec<Option<u64>> = mine.iter().map(|r| r.metrics.milestones.to_array()[k]).collect();
            *slot = lower_median(&column);
        }
        protocols.insert(p.name().to_string(), ProtocolSummary { replicates, median: MilestoneRounds::from_array(median) });
    }
    Summary { base_seed: spec.base_seed(), replicates: spec.replicates, protocols }
}

fn run_stem(r: &RunOutput) -> String {
    format!("{}_r{}_seed{}", r.protocol.name(), r.replicate, r.seed)
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), ExperimentError> {
    fs::write(&path, contents).map_err(|source| ExperimentError::Io { path: path.clone(), source })?;
    written.push(path);
    Ok(())
}

/// Writes the requested files into `spec.out_dir`. The summary goes last and
/// through a temporary file, so a failed experiment never leaves one behind.
pub fn emit_outputs(spec: &ExperimentSpec, runs: &[RunOutput]) -> Result<Vec<PathBuf>, ExperimentError> {
    let dir: &Path = &spec.out_dir;
    fs::create_dir_all(dir).map_err(|source| ExperimentError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for r in runs {
        let stem = run_stem(r);
        if spec.emit.per_cycle {
            write(dir.join(format!("{stem}.csv")), &per_cycle_csv(&r.metrics), &mut written)?;
        }
        if spec.emit.trust {
            if let Some(t) = &r.trust {
                write(dir.join(format!("{stem}_trust.csv")), &trust_csv(t), &mut written)?;
            }
        }
        if spec.emit.routes {
            let sink = r.metrics.node_count;
            write(dir.join(format!("{stem}_routes.txt")), &route_dump(&r.routes, sink), &mut written)?;
        }
    }
    if spec.emit.summary {
        let summary = summarize(spec, runs);
        let tmp = dir.join(".summary.json.tmp");
        let path = dir.join("summary.json");
        fs::write(&tmp, summary.to_json()).map_err(|source| ExperimentError::Io { path: tmp.clone(), source })?;
        if let Err(source) = fs::rename(&tmp, &path) {
            let _ = fs::remove_file(&tmp);
            return Err(ExperimentError::Io { path, source });
        }
        written.push(path);
    }
    Ok(written)
}
