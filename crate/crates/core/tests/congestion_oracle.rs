//! The incremental congestion index against a replay from the raw trace.

mod common;

use common::{brute_force_ci, congestion_replay, Trace};

#[test]
fn incremental_index_matches_replay() {
    let report = congestion_replay(1200, 2024);
    assert!(report.mismatches.is_empty(), "{:?}", &report.mismatches[..report.mismatches.len().min(5)]);
    assert!(report.checked >= 1000, "{}", report.checked);
}

#[test]
fn replay_agrees_on_hand_examples() {
    // arrivals 4 and 6, departures 2 and 4, one free slot after cycle 2
    let t = Trace { inflow: vec![4, 6], outflow: vec![2, 4], free_at_end: vec![3, 1] };
    assert!((brute_force_ci(&t, 3, None) - 0.5).abs() < 1e-12);
    assert_eq!(brute_force_ci(&t, 1, None), 0.0);
}
