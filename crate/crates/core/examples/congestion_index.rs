//! A queue filling up: the index rises as inflow outpaces outflow.

use tcaco::congestion::{congestion_index, NodeQueue};
use tcaco::packet::Packet;
use tcaco::NodeId;

fn main() {
    println!("by hand: r_in 5, free 1, r_out 3 -> {}", congestion_index(5.0, 1.0, 3.0));

    let mut q = NodeQueue::new(10);
    let mut id = 0;
    println!("cycle  arrivals  departures  held  index");
    for cycle in 1..=10u64 {
        let ci = q.congestion_index(cycle, None);
        let arrivals = if cycle <= 6 { 4 } else { 0 };
        let departures = 2.min(q.len());
        for _ in 0..departures {
            q.pop_front();
        }
        q.record_outflow(departures as u64);
        for _ in 0..arrivals {
            id += 1;
            q.record_inflow(1);
            let _ = q.enqueue(Packet::new(id, NodeId(0), cycle));
        }
        q.tick_wait_and_drop(5);
        q.close_cycle();
        println!("{cycle:>5}  {arrivals:>8}  {departures:>10}  {:>4}  {ci:.3}", q.len());
    }
}
