//! Applies disturbances to the kitchen one at a time and then composed,
//! showing which walls change, and what a rejected disturbance reports.
//!
//! cargo run --example disturb

use housesim::config::{load_disturbances, load_scene};
use housesim::disturbance::{apply, compose, validate};
use housesim::{Cell, Disturbance, Edge, Scene};

fn changed(before: &Scene, after: &Scene) -> Vec<String> {
    let mut out: Vec<String> =
        after.walls.iter().filter(|(e, m)| before.walls.get(e) != Some(m)).map(|(e, m)| format!("{e} {m}")).collect();
    if before.light_level != after.light_level {
        out.push(format!("light {}", after.light_level));
    }
    out
}

fn main() -> housesim::Result<()> {
    let kitchen = load_scene("data/scenes/kitchen.scene".as_ref())?;
    let mut all = Vec::new();
    for name in ["glasswall", "glassdoor", "mirror", "dimlight"] {
        let ds = load_disturbances(format!("data/disturbances/{name}.dist").as_ref())?;
        let after = compose(&kitchen, &ds).expect("bundled disturbances apply");
        println!("{name:<10} {}", changed(&kitchen, &after).join(", "));
        all.extend(ds);
    }
    // glasswall and glassdoor overlap on no edge, so everything composes
    let both = compose(&kitchen, &all).expect("composable");
    println!("composed   {} changed entries", changed(&kitchen, &both).len());

    let perimeter = Disturbance::glass([Edge::new(Cell::new(0, 0), Cell::new(0, -1)).unwrap()]);
    for v in validate(&kitchen, &perimeter) {
        println!("rejected   {perimeter}: {v}");
    }
    if let Err(e) = apply(&kitchen, &Disturbance::DimLight { level: 1.5 }) {
        println!("rejected   {e}");
    }
    Ok(())
}
