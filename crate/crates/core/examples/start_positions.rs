//! Draws start poses for a floorplan, keeping a minimum Manhattan distance
//! from a fixed canonical start and from each other.
//!
//! cargo run --example start_positions -- data/scenes/kitchen.scene 3 7 east 11

use std::env;
use std::process::ExitCode;

use housesim::config::load_scene;
use housesim::task::{generate_start_positions_avoiding, DEFAULT_MIN_START_DISTANCE};
use housesim::{AgentPose, Heading};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ExitCode {
    let args: Vec<String> = env::args().skip(1).collect();
    if args.len() != 5 {
        eprintln!("usage: start_positions SCENE X Y HEADING SEED");
        return ExitCode::from(1);
    }
    let scene = match load_scene(args[0].as_ref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let (Ok(x), Ok(y), Some(h), Ok(seed)) =
        (args[1].parse(), args[2].parse(), Heading::parse(&args[3]), args[4].parse::<u64>())
    else {
        eprintln!("bad pose or seed");
        return ExitCode::from(1);
    };
    let canonical = AgentPose::new(x, y, h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match generate_start_positions_avoiding(&scene, &[canonical], 3, DEFAULT_MIN_START_DISTANCE, &mut rng) {
        Ok(poses) => {
            println!("start {canonical}");
            for p in poses {
                println!("start {p}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
