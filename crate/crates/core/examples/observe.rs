//! Prints the full observation bundle at a pose under one condition,
//! marking detections that arrived by way of a mirror.
//!
//! cargo run --example observe -- mirror 3 7 east

use std::env;

use housesim::config::{load_disturbances, load_scene};
use housesim::disturbance::compose;
use housesim::seed::DetectionDraws;
use housesim::sensors::observe;
use housesim::{AgentPose, Heading, SensorConfig};

fn main() -> housesim::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let condition = args.first().map_or("mirror", String::as_str);
    let pose = match &args[..] {
        [_, x, y, h] => {
            AgentPose::new(x.parse().unwrap_or(3), y.parse().unwrap_or(7), Heading::parse(h).unwrap_or(Heading::East))
        }
        _ => AgentPose::new(3, 7, Heading::East),
    };
    let mut scene = load_scene("data/scenes/kitchen.scene".as_ref())?;
    if condition != "baseline" {
        let ds = load_disturbances(format!("data/disturbances/{condition}.dist").as_ref())?;
        scene = compose(&scene, &ds).expect("applies");
    }
    let cfg = SensorConfig::default();
    let obs = observe(&scene, &pose, &cfg, DetectionDraws::new(1, 0), false, true, true);
    println!("{condition} at {pose}, light {}", scene.light_level);
    for d in &obs.vision {
        println!(
            "  {:<10} range {:>5.2} bearing {:>6.1} -> cell {:<6} {}",
            d.object_class,
            d.apparent_range,
            d.apparent_bearing,
            format!("{} {}", d.apparent_cell(&pose).x, d.apparent_cell(&pose).y),
            if d.phantom { format!("phantom of {}", d.source_id) } else { String::new() }
        );
    }
    let gt = obs.gt_depth.as_deref().unwrap_or(&[]);
    let disagree = obs.depth.iter().zip(gt).filter(|(d, g)| (*d - *g).abs() > 1e-9).count();
    let seen = obs.vision_rays.iter().filter(|r| r.wall_seen).count();
    println!(
        "  {} rays; depth differs from ground truth on {disagree}; vision sees a surface on {seen}",
        obs.depth.len()
    );
    Ok(())
}
