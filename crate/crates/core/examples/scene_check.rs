//! Parses a scene file, lists invariant violations and prints the
//! canonical text.
//!
//! cargo run --example scene_check -- data/scenes/kitchen.scene

use std::env;
use std::fs;
use std::process::ExitCode;

use housesim::Scene;

fn main() -> ExitCode {
    let path = env::args().nth(1).unwrap_or_else(|| "data/scenes/kitchen.scene".into());
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(3);
        }
    };
    let scene = match Scene::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(2);
        }
    };
    let violations = scene.validate();
    for v in &violations {
        println!("{v}");
    }
    println!(
        "{}x{} light {} | {} walls, {} objects, {} appliances, classes: {}",
        scene.width,
        scene.height,
        scene.light_level,
        scene.walls.len(),
        scene.objects.len(),
        scene.appliances.len(),
        scene.class_registry().into_iter().collect::<Vec<_>>().join(" ")
    );
    print!("{}", scene.to_text());
    if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
