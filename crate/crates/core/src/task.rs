//! Task specifications, goal checking and start-position generation.
//!
//! Task file:
//!
//! ```text
//! task t4_warm_plate floorplan=../scenes/kitchen.scene
//! mindist 3
//! goal state Plate heated
//! goal objectin Plate Sink
//! variant "Put a warm plate in the sink."
//! variant "Put a heated white plate in the sink."
//! variant "Warm a plate and put it in the sink."
//! start 3 7 east
//! start 8 2 north
//! start 1 4 south
//! start 6 5 west
//! ```
//!
//! Other goal forms: `goal twoin CLASS KIND` (two distinct instances in a
//! container of that kind) and `goal examined CLASS`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::grid::{Cell, Heading};
use crate::scene::{AgentPose, ApplianceKind, Scene, Violation};
use crate::text;

pub const VARIANTS_PER_TASK: usize = 3;
pub const STARTS_PER_TASK: usize = 4;
pub const DEFAULT_MIN_START_DISTANCE: u32 = 3;
/// Rejection-sampling budget for start positions.
pub const MAX_START_DRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFlag {
    Heated,
    Cleaned,
    Cooled,
}

impl StateFlag {
    pub fn name(self) -> &'static str {
        match self {
            StateFlag::Heated => "heated",
            StateFlag::Cleaned => "cleaned",
            StateFlag::Cooled => "cooled",
        }
    }

    pub fn parse(s: &str) -> Option<StateFlag> {
        match s.to_ascii_lowercase().as_str() {
            "heated" => Some(StateFlag::Heated),
            "cleaned" => Some(StateFlag::Cleaned),
            "cooled" => Some(StateFlag::Cooled),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GoalCondition {
    ObjectIn { class: String, container: ApplianceKind },
    ObjectState { class: String, flag: StateFlag },
    TwoObjectsIn { class: String, container: ApplianceKind },
    ExaminedInLight { class: String },
}

impl GoalCondition {
    pub fn class(&self) -> &str {
        match self {
            GoalCondition::ObjectIn { class, .. }
            | GoalCondition::ObjectState { class, .. }
            | GoalCondition::TwoObjectsIn { class, .. }
            | GoalCondition::ExaminedInLight { class } => class,
        }
    }

    pub fn to_line(&self) -> String {
        match self {
            GoalCondition::ObjectIn { class, container } => format!("goal objectin {class} {container}"),
            GoalCondition::ObjectState { class, flag } => format!("goal state {class} {}", flag.name()),
            GoalCondition::TwoObjectsIn { class, container } => format!("goal twoin {class} {container}"),
            GoalCondition::ExaminedInLight { class } => format!("goal examined {class}"),
        }
    }
}

impl fmt::Display for GoalCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line()["goal ".len()..])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub id: String,
    /// Floorplan path as written in the task file (relative to it).
    pub floorplan: String,
    pub goal: Vec<GoalCondition>,
    /// Goal phrasings; labels only.
    pub variants: Vec<String>,
    pub start_positions: Vec<AgentPose>,
    pub min_start_distance: u32,
}

impl TaskSpec {
    pub fn parse(text: &str) -> Result<TaskSpec, ParseError> {
        parse_task(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("task {} {}\n", self.id, text::token(&format!("floorplan={}", self.floorplan)));
        out.push_str(&format!("mindist {}\n", self.min_start_distance));
        for g in &self.goal {
            out.push_str(&g.to_line());
            out.push('\n');
        }
        for v in &self.variants {
            out.push_str(&format!("variant {}\n", text::token(v)));
        }
        for s in &self.start_positions {
            out.push_str(&format!("start {s}\n"));
        }
        out
    }
}

pub fn parse_task(text: &str) -> Result<TaskSpec, ParseError> {
    let mut header: Option<(String, String)> = None;
    let mut min_dist = DEFAULT_MIN_START_DISTANCE;
    let mut goal = Vec::new();
    let mut variants = Vec::new();
    let mut starts = Vec::new();
    let mut last_line = 1;
    for line in text::lines(text)? {
        last_line = line.number;
        match line.keyword() {
            "task" => {
                line.expect_arity(2, 2)?;
                if header.is_some() {
                    return Err(ParseError::syntax(line.number, 1, "duplicate `task`"));
                }
                let fp = line.args()[1].text;
                let Some(path) = fp.strip_prefix("floorplan=").filter(|p| !p.is_empty()) else {
                    return Err(line.error_at(1, "expected floorplan=FILE"));
                };
                header = Some((line.args()[0].text.to_string(), path.to_string()));
            }
            "mindist" => {
                line.expect_arity(1, 1)?;
                let d = line.int(0)?;
                if d < 0 {
                    return Err(line.error_at(0, "distance must be non-negative"));
                }
                min_dist = d as u32;
            }
            "goal" => {
                line.expect_arity(2, 3)?;
                let kind = line.args()[0].text;
                let class = line.args()[1].text.to_string();
                let container = |l: &text::Line| -> Result<ApplianceKind, ParseError> {
                    l.expect_arity(3, 3)?;
                    ApplianceKind::parse(l.args()[2].text).ok_or_else(|| l.error_at(2, "expected an appliance kind"))
                };
                goal.push(match kind {
                    "objectin" => GoalCondition::ObjectIn { class, container: container(&line)? },
                    "twoin" => GoalCondition::TwoObjectsIn { class, container: container(&line)? },
                    "state" => {
                        line.expect_arity(3, 3)?;
                        let flag = StateFlag::parse(line.args()[2].text)
                            .ok_or_else(|| line.error_at(2, "expected heated, cleaned or cooled"))?;
                        GoalCondition::ObjectState { class, flag }
                    }
                    "examined" => {
                        line.expect_arity(2, 2)?;
                        GoalCondition::ExaminedInLight { class }
                    }
                    other => return Err(line.error_at(0, format!("unknown goal kind `{other}`"))),
                });
            }
            "variant" => {
                line.expect_arity(1, 1)?;
                variants.push(line.args()[0].text.to_string());
            }
            "start" => {
                line.expect_arity(3, 3)?;
                let h = Heading::parse(line.args()[2].text)
                    .ok_or_else(|| line.error_at(2, "expected north, east, south or west"))?;
                starts.push(AgentPose::new(line.int(0)?, line.int(1)?, h));
            }
            other => return Err(ParseError::syntax(line.number, 1, format!("unknown directive `{other}`"))),
        }
    }
    let Some((id, floorplan)) = header else {
        return Err(ParseError::syntax(1, 1, "missing `task` directive"));
    };
    if variants.len() != VARIANTS_PER_TASK {
        return Err(ParseError::semantic(
            last_line,
            1,
            "VariantCount",
            format!("expected {VARIANTS_PER_TASK} variants, found {}", variants.len()),
        ));
    }
    if starts.len() != STARTS_PER_TASK {
        return Err(ParseError::semantic(
            last_line,
            1,
            "StartCount",
            format!("expected {STARTS_PER_TASK} start positions, found {}", starts.len()),
        ));
    }
    Ok(TaskSpec { id, floorplan, goal, variants, start_positions: starts, min_start_distance: min_dist })
}

/// Checks the task against its floorplan.
pub fn validate_task(task: &TaskSpec, scene: &Scene) -> Vec<Violation> {
    let mut out = Vec::new();
    if task.variants.len() != VARIANTS_PER_TASK {
        out.push(Violation::VariantCount(task.variants.len()));
    }
    if task.start_positions.len() != STARTS_PER_TASK {
        out.push(Violation::StartCount(task.start_positions.len()));
    }
    let registry = scene.class_registry();
    for g in &task.goal {
        if !registry.contains(g.class()) {
            out.push(Violation::UnknownClass(g.class().to_string()));
        }
        if let GoalCondition::ObjectIn { container, .. } | GoalCondition::TwoObjectsIn { container, .. } = g {
            if !registry.contains(container.name()) {
                out.push(Violation::UnknownClass(container.name().to_string()));
            }
        }
    }
    let reachable = component(scene, task.start_positions.first().map(|p| p.cell));
    for (i, p) in task.start_positions.iter().enumerate() {
        if !scene.in_bounds(p.cell) {
            out.push(Violation::StartPosition(format!("start {i} out of bounds")));
            continue;
        }
        if !reachable.contains(&p.cell) {
            out.push(Violation::StartPosition(format!("start {i} unreachable")));
        }
        for (j, q) in task.start_positions.iter().enumerate().take(i) {
            if p.cell.manhattan(q.cell) < task.min_start_distance.max(1) {
                out.push(Violation::StartPosition(format!(
                    "starts {j} and {i} closer than {}",
                    task.min_start_distance.max(1)
                )));
            }
        }
    }
    out
}

/// Per-condition truth values; their conjunction is task success.
pub fn check_goal(scene: &Scene, task: &TaskSpec) -> Vec<bool> {
    check_conditions(scene, &task.goal)
}

pub fn check_conditions(scene: &Scene, goal: &[GoalCondition]) -> Vec<bool> {
    goal.iter().map(|g| holds(scene, g)).collect()
}

fn inside_kind(scene: &Scene, class: &str, kind: ApplianceKind) -> usize {
    scene
        .objects
        .iter()
        .filter(|o| o.class == class)
        .filter(|o| o.state.inside.as_deref().and_then(|r| scene.receptacle_kind(r)) == Some(kind))
        .count()
}

fn holds(scene: &Scene, g: &GoalCondition) -> bool {
    match g {
        GoalCondition::ObjectIn { class, container } => inside_kind(scene, class, *container) >= 1,
        GoalCondition::TwoObjectsIn { class, container } => inside_kind(scene, class, *container) >= 2,
        GoalCondition::ObjectState { class, flag } => scene.objects.iter().any(|o| {
            o.class == *class
                && match flag {
                    StateFlag::Heated => o.state.heated,
                    StateFlag::Cleaned => o.state.cleaned,
                    StateFlag::Cooled => o.state.cooled,
                }
        }),
        GoalCondition::ExaminedInLight { class } => scene.objects.iter().any(|o| o.class == *class && o.state.examined),
    }
}

/// Cells connected to `seed` through edges carrying no wall of any kind.
/// Without a seed, the largest such component (earliest cell on ties).
pub fn component(scene: &Scene, seed: Option<Cell>) -> BTreeSet<Cell> {
    let flood = |start: Cell| -> BTreeSet<Cell> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for h in Heading::ALL {
                let n = c.step(h);
                if scene.wall_on_side(c, h).is_none() && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen
    };
    match seed {
        Some(c) if scene.in_bounds(c) => flood(c),
        Some(_) => BTreeSet::new(),
        None => {
            let mut best = BTreeSet::new();
            let mut covered = BTreeSet::new();
            for c in scene.cells() {
                if covered.contains(&c) {
                    continue;
                }
                let comp = flood(c);
                covered.extend(comp.iter().copied());
                if comp.len() > best.len() {
                    best = comp;
                }
            }
            best
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot place {requested} start positions {min_dist} apart: {reason}")]
pub struct StartPositionError {
    pub requested: usize,
    pub min_dist: u32,
    pub reason: String,
}

/// `n` distinct reachable poses with pairwise Manhattan distance at least
/// `min_dist`, by rejection sampling.
pub fn generate_start_positions<R: Rng>(
    scene: &Scene,
    n: usize,
    min_dist: u32,
    rng: &mut R,
) -> Result<Vec<AgentPose>, StartPositionError> {
    generate_start_positions_avoiding(scene, &[], n, min_dist, rng)
}

/// As [`generate_start_positions`], also keeping `min_dist` from every
/// pose in `fixed` (for example a canonical start).
pub fn generate_start_positions_avoiding<R: Rng>(
    scene: &Scene,
    fixed: &[AgentPose],
    n: usize,
    min_dist: u32,
    rng: &mut R,
) -> Result<Vec<AgentPose>, StartPositionError> {
    let err = |reason: String| StartPositionError { requested: n, min_dist, reason };
    let candidates: Vec<Cell> = component(scene, fixed.first().map(|p| p.cell)).into_iter().collect();
    if candidates.len() < n {
        return Err(err(format!("only {} reachable cells", candidates.len())));
    }
    let far_enough =
        |c: Cell, placed: &[AgentPose]| placed.iter().all(|p| p.cell != c && p.cell.manhattan(c) >= min_dist);
    let mut placed: Vec<AgentPose> = fixed.to_vec();
    let mut draws = 0;
    while placed.len() < fixed.len() + n {
        if draws == MAX_START_DRAWS {
            return Err(err(format!("minimum distance not met after {MAX_START_DRAWS} draws")));
        }
        draws += 1;
        let cell = candidates[rng.random_range(0..candidates.len())];
        let heading = Heading::from_index(rng.random_range(0..4));
        if far_enough(cell, &placed) {
            placed.push(AgentPose { cell, heading });
        }
    }
    Ok(placed.split_off(fixed.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{Action, World};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TASK: &str = "\
task t4_warm_plate floorplan=kitchen.scene
goal state Plate heated
goal objectin Plate Sink
variant \"Put a warm plate in the sink.\"
variant \"Put a heated white plate in the sink.\"
variant \"Warm a plate and put it in the sink.\"
start 0 0 east
start 4 0 south
start 0 4 north
start 4 4 west
";

    fn scene() -> Scene {
        Scene::parse("size 5 5\nobject plate_1 Plate 1 0\nappliance mw_1 Microwave 2 0\nappliance sink_1 Sink 3 0\n")
            .unwrap()
    }

    #[test]
    fn parse_and_round_trip() {
        let t = parse_task(TASK).unwrap();
        assert_eq!(t.goal.len(), 2);
        assert_eq!(t.min_start_distance, DEFAULT_MIN_START_DISTANCE);
        assert_eq!(parse_task(&t.to_text()).unwrap(), t);
        assert!(validate_task(&t, &scene()).is_empty());
    }

    #[test]
    fn counts_enforced() {
        let two = TASK.replace("variant \"Warm a plate and put it in the sink.\"\n", "");
        assert_eq!(parse_task(&two).unwrap_err().invariant(), Some("VariantCount"));
        let three = TASK.replace("start 4 4 west\n", "");
        assert_eq!(parse_task(&three).unwrap_err().invariant(), Some("StartCount"));
    }

    #[test]
    fn unknown_class() {
        let t = parse_task(&TASK.replace("objectin Plate Sink", "objectin Plate Fridge")).unwrap();
        assert_eq!(validate_task(&t, &scene()), vec![Violation::UnknownClass("Fridge".into())]);
    }

    #[test]
    fn warm_plate_goal() {
        let t = parse_task(TASK).unwrap();
        let s = scene();
        assert_eq!(check_goal(&s, &t), vec![false, false]);
        let mut w = World::new(s, AgentPose::new(1, 0, Heading::East));
        for a in [
            Action::Pickup("Plate".into()),
            Action::MoveAhead,
            Action::Put(ApplianceKind::Microwave),
            Action::ToggleOn(ApplianceKind::Microwave),
            Action::ToggleOff(ApplianceKind::Microwave),
            Action::Pickup("Plate".into()),
            Action::MoveAhead,
            Action::Put(ApplianceKind::Sink),
        ] {
            assert!(w.execute(&a).success, "{a}");
        }
        assert_eq!(check_goal(&w.scene, &t), vec![true, true]);
    }

    #[test]
    fn empty_goal_is_vacuous() {
        let mut t = parse_task(TASK).unwrap();
        t.goal.clear();
        assert!(check_goal(&scene(), &t).is_empty());
    }

    #[test]
    fn two_objects_need_two_instances() {
        let mut s =
            Scene::parse("size 3 1\nobject c1 Cup 0 0 in=s\nobject c2 Cup 1 0\nappliance s Sink 0 0\n").unwrap();
        let g = [GoalCondition::TwoObjectsIn { class: "Cup".into(), container: ApplianceKind::Sink }];
        assert_eq!(check_conditions(&s, &g), vec![false]);
        let c2 = s.object_mut("c2").unwrap();
        c2.cell = Some(Cell::new(0, 0));
        c2.state.inside = Some("s".into());
        assert_eq!(check_conditions(&s, &g), vec![true]);
    }

    #[test]
    fn start_positions() {
        let s = Scene::empty(10, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = generate_start_positions(&s, 1, 3, &mut rng).unwrap();
        assert_eq!(one.len(), 1);
        let four = generate_start_positions(&s, 4, 3, &mut rng).unwrap();
        for (i, p) in four.iter().enumerate() {
            for q in &four[..i] {
                assert!(p.cell.manhattan(q.cell) >= 3);
            }
        }
        let err = generate_start_positions(&s, 4, 100, &mut rng).unwrap_err();
        assert!(err.reason.contains("10000 draws"));
        // same seed, same poses
        let a = generate_start_positions(&s, 4, 3, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = generate_start_positions(&s, 4, 3, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }
}
