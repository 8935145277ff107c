//! Casts the sensor fan from one pose in the mirrored kitchen and prints,
//! per ray, what vision, depth and ground-truth depth report.
//!
//! cargo run --example raycast -- 3 7 east

use std::env;

use housesim::config::{load_disturbances, load_scene};
use housesim::disturbance::compose;
use housesim::sensors::raycast::Terminal;
use housesim::sensors::{cast_ray, ray_direction, ray_origin, SensorConfig, SensorMode};
use housesim::{AgentPose, Heading};

fn terminal(t: &Terminal) -> String {
    match t {
        Terminal::Surface { material, edge } => format!("{material} {edge}"),
        Terminal::MaxRange => "max range".into(),
    }
}

fn main() -> housesim::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let pose = match args.as_slice() {
        [x, y, h] => {
            AgentPose::new(x.parse().unwrap_or(3), y.parse().unwrap_or(7), Heading::parse(h).unwrap_or(Heading::East))
        }
        _ => AgentPose::new(3, 7, Heading::East),
    };
    let kitchen = load_scene("data/scenes/kitchen.scene".as_ref())?;
    let scene = compose(&kitchen, &load_disturbances("data/disturbances/mirror.dist".as_ref())?).expect("applies");
    let cfg = SensorConfig::default();
    println!("pose {pose}");
    println!("{:>7}  {:>6} {:<22}  {:>6} {:<22}  {:>6}", "bearing", "vision", "", "depth", "", "gt");
    for b in cfg.bearings() {
        let dir = ray_direction(&pose, b);
        let [v, d, g] = [SensorMode::Vision, SensorMode::Depth, SensorMode::GroundTruth]
            .map(|m| cast_ray(&scene, ray_origin(&pose), dir, m, cfg.limits()));
        println!(
            "{b:>7.1}  {:>6.3} {:<22}  {:>6.3} {:<22}  {:>6.3}",
            v.path_length,
            format!("{}{}", terminal(&v.terminal), if v.reflected { " (refl)" } else { "" }),
            d.path_length,
            terminal(&d.terminal),
            g.path_length
        );
    }
    Ok(())
}
