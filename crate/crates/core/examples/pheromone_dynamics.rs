//! Pheromone on a busy link versus an idle one, then evaporation to the floor.

use tcaco::routing::PheromoneTable;
use tcaco::topology::build_topology;
use tcaco::{NodeId, Point};

fn main() {
    let pts: Vec<Point> = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)].into_iter().map(Point::from).collect();
    let topo = build_topology(&pts, Point::new(10.0, 10.0), 12.0).unwrap();
    let (busy, idle) = ((NodeId(0), NodeId(1)), (NodeId(0), NodeId(2)));
    let mut tau = PheromoneTable::new(&topo, 1.0, 1e-6);
    let rho = 0.1;
    println!("cycle  busy      idle");
    for cycle in 1..=60 {
        // 5 packets a cycle on the busy link for the first 30 cycles
        let traffic = if cycle <= 30 { 5 } else { 0 };
        tau.step(&topo, rho, 1.0, |i, j| if (i, j) == busy { traffic } else { 0 });
        if cycle % 10 == 0 {
            println!("{cycle:>5}  {:<8.4}  {:.6}", tau.get(busy.0, busy.1), tau.get(idle.0, idle.1));
        }
    }
    for _ in 0..500 {
        tau.step(&topo, rho, 1.0, |_, _| 0);
    }
    println!("after 500 idle cycles the smallest value is {:e}", tau.min_over_links(&topo));
}
