//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use housesim::agent::{CellState, SemanticMap};
use housesim::config::{load_disturbances, load_scene};
use housesim::disturbance::compose;
use housesim::grid::{Point, Vec2};
use housesim::scene::{Appliance, ObjectInstance, ObjectState};
use housesim::sensors::SensorMode;
use housesim::{AgentPose, ApplianceKind, Cell, Edge, Heading, Material, Scene};
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn kitchen() -> Scene {
    load_scene(&data("scenes/kitchen.scene")).expect("bundled kitchen loads")
}

pub fn disturbed_kitchen(condition: &str) -> Scene {
    let ds = load_disturbances(&data(&format!("disturbances/{condition}.dist"))).expect("bundled disturbance");
    compose(&kitchen(), &ds).expect("bundled disturbance applies")
}

fn sorted_files(dir: &str, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data(dir))
        .expect("bundled data dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

/// Every bundled scene file plus the kitchen under every bundled disturbance.
pub fn bundled_scenes() -> Vec<(String, Scene)> {
    let mut out: Vec<(String, Scene)> = sorted_files("scenes", "scene")
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), load_scene(&p).expect("bundled scene")))
        .collect();
    for p in sorted_files("disturbances", "dist") {
        let name = p.file_stem().unwrap().to_string_lossy().into_owned();
        out.push((format!("kitchen+{name}"), disturbed_kitchen(&name)));
    }
    out
}

pub fn random_pose<R: Rng>(scene: &Scene, rng: &mut R) -> AgentPose {
    AgentPose::new(
        rng.random_range(0..scene.width as i32),
        rng.random_range(0..scene.height as i32),
        Heading::ALL[rng.random_range(0..4)],
    )
}

pub fn interior_edges(w: u32, h: u32) -> Vec<Edge> {
    let mut out = Vec::new();
    for y in 0..h as i32 {
        for x in 0..w as i32 {
            if x + 1 < w as i32 {
                out.push(Edge::new(Cell::new(x, y), Cell::new(x + 1, y)).unwrap());
            }
            if y + 1 < h as i32 {
                out.push(Edge::new(Cell::new(x, y), Cell::new(x, y + 1)).unwrap());
            }
        }
    }
    out
}

const CLASSES: [&str; 6] = ["Apple", "Bottle", "Cup", "Plate", "Potato", "Book"];

/// A valid scene with walls of every material, a few objects and appliances.
pub fn random_scene<R: Rng>(rng: &mut R, wall_p: f64) -> Scene {
    let (w, h) = (rng.random_range(2..=12u32), rng.random_range(2..=12u32));
    let mut s = Scene::empty(w, h);
    s.light_level = [0.0, 0.1, 0.25, 0.5, 1.0, rng.random::<f64>()][rng.random_range(0..6)];
    for e in interior_edges(w, h) {
        if rng.random_bool(wall_p) {
            let m = [Material::Opaque, Material::Glass, Material::Mirror][rng.random_range(0..3)];
            s.walls.insert(e, m);
        }
    }
    let cell = |rng: &mut R| Cell::new(rng.random_range(0..w as i32), rng.random_range(0..h as i32));
    for (i, kind) in ApplianceKind::ALL.iter().enumerate() {
        if rng.random_bool(0.6) {
            let mut a = Appliance::new(format!("{}_{i}", kind.name().to_lowercase()), *kind, cell(rng));
            if a.is_open.is_some() {
                a.is_open = Some(rng.random_bool(0.5));
            }
            if a.is_on.is_some() {
                a.is_on = Some(rng.random_bool(0.5));
            }
            s.appliances.push(a);
        }
    }
    for i in 0..rng.random_range(0..6) {
        let class = CLASSES.choose(rng).unwrap();
        let mut state = ObjectState {
            heated: rng.random_bool(0.2),
            cleaned: rng.random_bool(0.2),
            cooled: rng.random_bool(0.2),
            examined: rng.random_bool(0.2),
            ..ObjectState::default()
        };
        let held = i == 0 && rng.random_bool(0.2);
        let mut at = if held { None } else { Some(cell(rng)) };
        if !held && rng.random_bool(0.3) {
            if let Some(r) = s.appliances.iter().filter(|a| a.kind.receptacle()).collect::<Vec<_>>().choose(rng) {
                state.inside = Some(r.id.clone());
                at = Some(r.cell);
            }
        }
        state.held = held;
        s.objects.push(ObjectInstance {
            id: format!("{}_{i}", class.to_lowercase()),
            class: class.to_string(),
            cell: at,
            state,
        });
    }
    // unwall objects boxed in by opaque edges
    let boxed: Vec<Cell> = s.objects.iter().filter_map(|o| o.cell).collect();
    for c in boxed {
        let inner: Vec<Heading> = Heading::ALL.into_iter().filter(|h| s.in_bounds(c.step(*h))).collect();
        s.walls.remove(&Edge::side(c, *inner.choose(rng).unwrap()));
    }
    s
}

/// A random point strictly inside a cell of `scene`.
pub fn random_point<R: Rng>(scene: &Scene, rng: &mut R) -> Point {
    let x = rng.random_range(0..scene.width) as f64 + rng.random_range(0.001..0.999);
    let y = rng.random_range(0..scene.height) as f64 + rng.random_range(0.001..0.999);
    Point::new(x, y)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarchHit {
    pub length: f64,
    pub terminal: Option<(Material, Edge)>,
    pub reflections: u32,
}

/// Fixed-step ray marching. Each step of `STEP` cells checks whether the
/// point has left the current cell; the exit is then located by bisection
/// on that same predicate and the wall on the crossed edge decides what
/// happens next.
pub fn march(scene: &Scene, origin: Point, dir: Vec2, mode: SensorMode, max_range: f64, cap: u32) -> MarchHit {
    const STEP: f64 = 1e-3;
    let (mut px, mut py) = (origin.x, origin.y);
    let (mut dx, mut dy) = (dir.x, dir.y);
    let (mut cx, mut cy) = (px.floor() as i32, py.floor() as i32);
    let mut traveled = 0.0;
    let mut reflections = 0;
    loop {
        let out_x = |t: f64, cx: i32| {
            let x = px + dx * t;
            (dx > 0.0 && x > (cx + 1) as f64) || (dx < 0.0 && x < cx as f64)
        };
        let out_y = |t: f64, cy: i32| {
            let y = py + dy * t;
            (dy > 0.0 && y > (cy + 1) as f64) || (dy < 0.0 && y < cy as f64)
        };
        let bisect = |mut lo: f64, mut hi: f64, out: &dyn Fn(f64) -> bool| {
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if out(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let remaining = max_range - traveled;
        let mut t = 0.0;
        let (tx, ty) = loop {
            let t2 = (t + STEP).min(remaining);
            let (ox, oy) = (out_x(t2, cx), out_y(t2, cy));
            if ox || oy {
                let tx = if ox { bisect(t, t2, &|s| out_x(s, cx)) } else { f64::INFINITY };
                let ty = if oy { bisect(t, t2, &|s| out_y(s, cy)) } else { f64::INFINITY };
                break (tx, ty);
            }
            if t2 >= remaining {
                return MarchHit { length: max_range, terminal: None, reflections };
            }
            t = t2;
        };
        let along_x = tx <= ty + 1e-12;
        let tc = if along_x { tx } else { ty };
        let here = Cell::new(cx, cy);
        let next =
            if along_x { Cell::new(cx + dx.signum() as i32, cy) } else { Cell::new(cx, cy + dy.signum() as i32) };
        let edge = Edge::new(here, next).unwrap();
        px += dx * tc;
        py += dy * tc;
        traveled += tc;
        // 0 pass, 1 reflect, 2 stop
        let act = match (scene.wall(&edge), mode) {
            (None, _) => 0,
            (Some(Material::Opaque), _) => 2,
            (Some(Material::Glass), SensorMode::GroundTruth) => 2,
            (Some(Material::Glass), _) => 0,
            (Some(Material::Mirror), SensorMode::Vision) if reflections < cap => 1,
            (Some(Material::Mirror), _) => 2,
        };
        match act {
            0 => {
                cx = next.x;
                cy = next.y;
            }
            1 => {
                reflections += 1;
                if along_x {
                    dx = -dx;
                } else {
                    dy = -dy;
                }
            }
            _ => {
                return MarchHit { length: traveled, terminal: Some((scene.wall(&edge).unwrap(), edge)), reflections };
            }
        }
    }
}

/// A random semantic map with blocked cells and edges.
pub fn random_map<R: Rng>(rng: &mut R) -> SemanticMap {
    let (w, h) = (rng.random_range(1..=20u32), rng.random_range(1..=20u32));
    let mut m = SemanticMap::new(w, h);
    let (pc, pe) = (rng.random_range(0.0..0.35), rng.random_range(0.0..0.35));
    for c in m.cells().collect::<Vec<_>>() {
        let r: f64 = rng.random();
        if r < pc {
            m.mark_blocked(c);
        } else if r < 0.8 {
            m.mark_free(c);
        }
    }
    for e in interior_edges(w, h) {
        if rng.random_bool(pe) {
            m.block_edge(e);
        }
    }
    m
}

/// Shortest path lengths from `from` by repeated relaxation until
/// nothing changes. The start counts even when it is blocked.
pub fn relax_all(m: &SemanticMap, from: Cell) -> BTreeMap<Cell, usize> {
    let cells: Vec<Cell> = m.cells().collect();
    let mut d: BTreeMap<Cell, usize> = BTreeMap::from([(from, 0)]);
    loop {
        let mut changed = false;
        for &c in &cells {
            let Some(&dc) = d.get(&c) else { continue };
            for n in
                [Cell::new(c.x + 1, c.y), Cell::new(c.x - 1, c.y), Cell::new(c.x, c.y + 1), Cell::new(c.x, c.y - 1)]
            {
                if !m.in_bounds(n) || m.state(n) == CellState::Blocked {
                    continue;
                }
                if m.blocked_edges.contains(&Edge::new(c, n).unwrap()) {
                    continue;
                }
                if d.get(&n).is_none_or(|&dn| dn > dc + 1) {
                    d.insert(n, dc + 1);
                    changed = true;
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

pub fn relax_distance(m: &SemanticMap, from: Cell, to: Cell) -> Option<usize> {
    if m.state(to) == CellState::Blocked {
        return None;
    }
    relax_all(m, from).get(&to).copied()
}

/// Frontier by definition: unknown cells with an explored free neighbour
/// across an edge not known to be blocked.
pub fn brute_frontier(m: &SemanticMap) -> Vec<Cell> {
    let mut out = Vec::new();
    for c in m.cells() {
        if m.state(c) != CellState::Unknown {
            continue;
        }
        let open_free_neighbour = c.neighbors().into_iter().any(|n| {
            m.in_bounds(n)
                && m.state(n) == CellState::Free
                && m.is_explored(n)
                && !m.blocked_edges.contains(&Edge::new(c, n).unwrap())
        });
        if open_free_neighbour {
            out.push(c);
        }
    }
    out
}

/// A log with only the fields aggregation reads filled in meaningfully.
pub fn synthetic_log(
    task: &str,
    start: usize,
    condition: &str,
    kind: housesim::agent::AgentKind,
    plan_len: usize,
    done: usize,
    success: bool,
) -> housesim::eval::EpisodeLog {
    use housesim::agent::{AgentProfile, Subgoal};
    use housesim::eval::{EpisodeLog, Outcome};
    let done = if success { plan_len } else { done.min(plan_len) };
    let pose = AgentPose::new(0, 0, Heading::North);
    EpisodeLog {
        schema_version: housesim::eval::episode::LOG_SCHEMA_VERSION,
        task_id: task.to_string(),
        variant: 0,
        variant_text: String::new(),
        start_index: start,
        start: pose,
        condition: condition.to_string(),
        profile: AgentProfile::new(kind),
        seed: start as u64,
        step_budget: 500,
        initial_reach: vec![],
        steps: vec![],
        failed_actions: 0,
        outcome: if success { Outcome::Success } else { Outcome::FailLimit },
        plan: vec![Subgoal::Find("Cup".into()); plan_len],
        subgoal_flags: (0..plan_len).map(|i| i < done).collect(),
        goal_flags: vec![success],
        final_map: SemanticMap::new(1, 1),
        final_scene_digest: String::new(),
    }
}
