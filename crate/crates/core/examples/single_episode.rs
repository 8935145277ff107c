//! Runs one episode and prints its step trace.
//!
//! cargo run --release --example single_episode -- data/tasks/t1_bottle_counter.task mirror visiononly 0

use std::env;

use housesim::agent::{AgentKind, AgentProfile};
use housesim::config::{load_disturbances, load_task};
use housesim::disturbance::compose;
use housesim::eval::{episode_seed, run_episode, EpisodeSpec};

fn main() -> housesim::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let arg = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let entry = load_task(arg(0, "data/tasks/t1_bottle_counter.task").as_ref())?;
    let condition = arg(1, "mirror");
    let kind = AgentKind::parse(&arg(2, "visiononly")).unwrap_or(AgentKind::VisionOnly);
    let start: usize = arg(3, "0").parse().unwrap_or(0);
    let mut scene = entry.floorplan.clone();
    if condition != "baseline" {
        let ds = load_disturbances(format!("data/disturbances/{condition}.dist").as_ref())?;
        scene = compose(&scene, &ds).expect("applies");
    }
    let seed = episode_seed(1, &entry.spec.id, 0, start, &condition, kind.name());
    let log = run_episode(&EpisodeSpec {
        scene: &scene,
        task: &entry.spec,
        variant: 0,
        start,
        condition: &condition,
        profile: AgentProfile::new(kind),
        seed,
        step_budget: 500,
    })?;
    println!("\"{}\" from {} ({condition}, {})", log.variant_text, log.start, kind.name());
    println!("plan: {}", log.plan.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));
    for s in &log.steps {
        let mut notes = Vec::new();
        if s.bump {
            notes.push("bump".to_string());
        }
        for p in &s.phantoms {
            notes.push(format!("phantom {} at {} {}", p.class, p.apparent_cell.x, p.apparent_cell.y));
        }
        for l in &s.learned {
            notes.push(format!("learned {} ({:?})", l.edge, l.source));
        }
        println!(
            "{:>4} {:<18} {:<4} {:<10} {}",
            s.step,
            s.action.to_string(),
            if s.success { "ok" } else { "FAIL" },
            s.pose.to_string(),
            notes.join("; ")
        );
    }
    println!("{:?} after {} steps, {} failed actions", log.outcome, log.steps.len(), log.failed_actions);
    println!("subgoals {:?}", log.subgoal_flags);
    Ok(())
}
