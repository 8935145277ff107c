//! Builds a partial semantic map by hand and shows the agent's planner and
//! frontier choice on it.
//!
//! cargo run --example plan_path

use housesim::agent::plan::{frontier_cells, next_frontier, plan_path};
use housesim::agent::SemanticMap;
use housesim::eval::{render_ascii, MapView};
use housesim::{AgentPose, Cell, Edge, Heading};

fn main() {
    let mut map = SemanticMap::new(6, 4);
    for y in 0..4 {
        for x in 0..4 {
            map.mark_free(Cell::new(x, y));
        }
    }
    for y in 0..3 {
        map.block_edge(Edge::new(Cell::new(1, y), Cell::new(2, y)).unwrap());
    }
    map.mark_blocked(Cell::new(3, 1));
    map.add_sighting("Mug", Cell::new(3, 0));

    let pose = AgentPose::new(0, 0, Heading::East);
    let path = plan_path(&map, pose.cell, Cell::new(3, 0)).unwrap_or_default();
    let steps: Vec<String> = path.iter().map(|c| format!("({},{})", c.x, c.y)).collect();
    println!("path to the mug: {}", steps.join(" "));
    println!("frontier: {:?}", frontier_cells(&map).iter().map(|c| (c.x, c.y)).collect::<Vec<_>>());
    println!("next frontier target: {:?}", next_frontier(&map, &pose).map(|c| (c.x, c.y)));
    print!("{}", render_ascii(&MapView { map: &map, trajectory: &path, agent: Some(pose) }));
}
