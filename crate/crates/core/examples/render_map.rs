//! Runs the map-building agent with ground-truth depth through the glass
//! partition and renders its final semantic map: the glass shows up as a
//! solid line of blocked edges that the path walks around.
//!
//! cargo run --release --example render_map -- glasswall_map.pgm

use std::env;
use std::fs;

use housesim::agent::{AgentKind, AgentProfile};
use housesim::config::{load_disturbances, load_task};
use housesim::disturbance::compose;
use housesim::eval::{render_log, run_episode, EpisodeSpec};
use housesim::Error;

fn main() -> housesim::Result<()> {
    let out = env::args().nth(1).unwrap_or_else(|| "glasswall_map.pgm".into());
    let entry = load_task("data/tasks/t1_bottle_counter.task".as_ref())?;
    let glass = load_disturbances("data/disturbances/glasswall.dist".as_ref())?;
    let scene = compose(&entry.floorplan, &glass).expect("applies");
    let log = run_episode(&EpisodeSpec {
        scene: &scene,
        task: &entry.spec,
        variant: 0,
        start: 0,
        condition: "glasswall",
        profile: AgentProfile::new(AgentKind::MapGtDepth),
        seed: 7,
        step_budget: 500,
    })?;
    let (ascii, pgm) = render_log(&log);
    print!("{ascii}");
    println!("{:?} in {} steps", log.outcome, log.steps.len());
    fs::write(&out, pgm).map_err(|e| Error::io(&out, e))?;
    println!("wrote {out}");
    Ok(())
}
