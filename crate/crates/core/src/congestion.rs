//! Bounded per-node packet buffers and the congestion index.
//!
//! Each [`NodeQueue`] keeps per-cycle totals of packets forwarded to it
//! (inflow) and by it (outflow), stored as prefix sums so the averages over
//! any trailing window are exact integer ratios.

use std::collections::VecDeque;

use thiserror::Error;

use crate::packet::{Fate, Packet};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CongestionError {
    #[error("cycle {cycle} needs {needed} completed cycles of history, have {have}")]
    InsufficientHistory { cycle: u64, needed: u64, have: u64 },
}

#[derive(Debug)]
pub enum Enqueue {
    Accepted,
    /// The buffer was full; the packet comes back marked `DroppedOverflow`.
    RejectedFull(Packet),
}

impl Enqueue {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Enqueue::Accepted)
    }
}

#[derive(Debug, Clone)]
pub struct NodeQueue {
    capacity: usize,
    entries: VecDeque<Packet>,
    inflow_now: u64,
    outflow_now: u64,
    // prefix[c] = total over completed cycles 1..=c; prefix[0] = 0
    inflow_prefix: Vec<u64>,
    outflow_prefix: Vec<u64>,
    // free buffer space at the end of each completed cycle
    free_space: Vec<usize>,
}

impl NodeQueue {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "queue capacity must be at least 1");
        Self {
            capacity,
            entries: VecDeque::with_capacity(capacity.min(1024)),
            inflow_now: 0,
            outflow_now: 0,
            inflow_prefix: vec![0],
            outflow_prefix: vec![0],
            free_space: Vec::new(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.capacity
    }

    pub fn free_space(&self) -> usize {
        self.capacity - self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Packet> {
        self.entries.iter()
    }

    pub fn enqueue(&mut self, mut packet: Packet) -> Enqueue {
        if self.is_full() {
            packet.finish(Fate::DroppedOverflow);
            return Enqueue::RejectedFull(packet);
        }
        packet.wait_cycles = 0;
        self.entries.push_back(packet);
        Enqueue::Accepted
    }

    /// Removes the oldest entry.
    pub fn pop_front(&mut self) -> Option<Packet> {
        self.entries.pop_front()
    }

    /// Takes every entry out in FIFO order; pair with [`NodeQueue::restore`].
    pub(crate) fn drain_all(&mut self) -> VecDeque<Packet> {
        std::mem::take(&mut self.entries)
    }

    /// Puts back entries that were not forwarded, ahead of anything that
    /// arrived while the queue was being processed.
    pub(crate) fn restore(&mut self, kept: VecDeque<Packet>) {
        let arrived = std::mem::replace(&mut self.entries, kept);
        self.entries.extend(arrived);
        debug_assert!(self.entries.len() <= self.capacity);
    }

    /// Ages every entry by one cycle. Entries whose wait would exceed
    /// `wc_max` are removed, marked `DroppedTimeout`, and returned.
    pub fn tick_wait_and_drop(&mut self, wc_max: u32) -> Vec<Packet> {
        let mut dropped = Vec::new();
        let mut kept = VecDeque::with_capacity(self.entries.len());
        for mut p in self.entries.drain(..) {
            if p.wait_cycles >= wc_max {
                p.finish(Fate::DroppedTimeout);
                dropped.push(p);
            } else {
                p.wait_cycles += 1;
                p.hold_cycles = p.hold_cycles.saturating_sub(1);
                kept.push_back(p);
            }
        }
        self.entries = kept;
        dropped
    }

    /// Counts packets forwarded to this node in the current cycle.
    pub fn record_inflow(&mut self, packets: u64) {
        self.inflow_now += packets;
    }

    /// Counts packets forwarded by this node in the current cycle.
    pub fn record_outflow(&mut self, packets: u64) {
        self.outflow_now += packets;
    }

    pub fn inflow_this_cycle(&self) -> u64 {
        self.inflow_now
    }

    pub fn outflow_this_cycle(&self) -> u64 {
        self.outflow_now
    }

    /// Seals the current cycle's counters and free-space reading.
    pub fn close_cycle(&mut self) {
        let last_in = *self.inflow_prefix.last().unwrap();
        let last_out = *self.outflow_prefix.last().unwrap();
        self.inflow_prefix.push(last_in + self.inflow_now);
        self.outflow_prefix.push(last_out + self.outflow_now);
        self.free_space.push(self.free_space());
        self.inflow_now = 0;
        self.outflow_now = 0;
    }

    pub fn completed_cycles(&self) -> u64 {
        self.free_space.len() as u64
    }

    fn span(&self, cycle: u64, window: Option<usize>) -> Result<(usize, usize), CongestionError> {
        let needed = cycle.saturating_sub(1);
        if cycle < 2 || self.completed_cycles() < needed {
            return Err(CongestionError::InsufficientHistory {
                cycle,
                needed: needed.max(1),
                have: self.completed_cycles(),
            });
        }
        let end = needed as usize;
        let len = window.map_or(end, |w| w.min(end));
        Ok((end - len, end))
    }

    /// Mean packets forwarded to this node per cycle over cycles `1..cycle`
    /// (or the trailing `window` of them).
    pub fn avg_inflow(&self, cycle: u64, window: Option<usize>) -> Result<f64, CongestionError> {
        let (start, end) = self.span(cycle, window)?;
        Ok((self.inflow_prefix[end] - self.inflow_prefix[start]) as f64 / (end - start) as f64)
    }

    pub fn avg_outflow(&self, cycle: u64, window: Option<usize>) -> Result<f64, CongestionError> {
        let (start, end) = self.span(cycle, window)?;
        Ok((self.outflow_prefix[end] - self.outflow_prefix[start]) as f64 / (end - start) as f64)
    }

    /// Congestion index for `cycle`, from the history of completed cycles
    /// before it. Zero at cycle 1.
    pub fn congestion_index(&self, cycle: u64, window: Option<usize>) -> f64 {
        let (Ok(r_in), Ok(r_out)) = (self.avg_inflow(cycle, window), self.avg_outflow(cycle, window)) else {
            return 0.0;
        };
        let empty = self.free_space[cycle as usize - 2] as f64;
        congestion_index(r_in, empty, r_out)
    }
}

/// `(r_in + Q - r_out) / (r_in + Q)` clamped to `[0, 1]`; zero when the
/// denominator vanishes.
pub fn congestion_index(avg_inflow: f64, empty_space: f64, avg_outflow: f64) -> f64 {
    let denom = avg_inflow + empty_space;
    if denom <= 0.0 {
        return 0.0;
    }
    ((denom - avg_outflow) / denom).clamp(0.0, 1.0)
}
