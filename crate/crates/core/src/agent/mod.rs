//! Classical baseline agents: a semantic map, a BFS planner with frontier
//! exploration, and fixed subgoal templates.
//!
//! The three profiles share the policy and differ only in which channels
//! feed the map:
//!
//! - `VisionOnly`: vision free-space and bumps.
//! - `MapDepth`: adds depth, which stops at mirrors but sees through glass.
//! - `MapGtDepth`: adds ground-truth depth, which stops at every wall.

pub mod map;
pub mod plan;
pub mod subgoal;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use map::{update_map, CellState, EdgeSource, SemanticMap};
pub use plan::{next_frontier, plan_path};
pub use subgoal::{decompose, Subgoal, SubgoalPlan, UnknownGoalKind};

use crate::env::Action;
use crate::grid::{Cell, Edge, Heading};
use crate::scene::{AgentPose, ApplianceKind};
use crate::sensors::{ObservationBundle, SensorConfig};

pub const DEFAULT_FAIL_LIMIT: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentKind {
    VisionOnly,
    MapDepth,
    MapGtDepth,
}

impl AgentKind {
    pub const ALL: [AgentKind; 3] = [AgentKind::VisionOnly, AgentKind::MapDepth, AgentKind::MapGtDepth];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::VisionOnly => "visiononly",
            AgentKind::MapDepth => "mapdepth",
            AgentKind::MapGtDepth => "mapgtdepth",
        }
    }

    pub fn parse(s: &str) -> Option<AgentKind> {
        AgentKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn uses_gt_depth(self) -> bool {
        self == AgentKind::MapGtDepth
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentProfile {
    pub kind: AgentKind,
    pub cfg: SensorConfig,
    pub fail_limit: u32,
}

impl AgentProfile {
    pub fn new(kind: AgentKind) -> Self {
        AgentProfile { kind, cfg: SensorConfig::default(), fail_limit: DEFAULT_FAIL_LIMIT }
    }
}

/// Per-episode agent state. Owns its map and plan; knows the grid size,
/// its own pose and what it holds, nothing else about the world.
#[derive(Clone, Debug)]
pub struct Agent {
    profile: AgentProfile,
    plan: SubgoalPlan,
    map: SemanticMap,
    pose: AgentPose,
    holding: Option<String>,
    pending: Option<Action>,
    macro_queue: VecDeque<Action>,
    ruled_out: BTreeSet<(String, Cell)>,
    placed: BTreeSet<(String, Cell)>,
    nav_target: Option<Cell>,
    learned: Vec<(Edge, EdgeSource)>,
    /// Cells stood on since the last search sweep started.
    visited: BTreeSet<Cell>,
}

impl Agent {
    pub fn new(profile: AgentProfile, plan: SubgoalPlan, width: u32, height: u32, start: AgentPose) -> Self {
        Agent {
            profile,
            plan,
            map: SemanticMap::new(width, height),
            pose: start,
            holding: None,
            pending: None,
            macro_queue: VecDeque::new(),
            ruled_out: BTreeSet::new(),
            placed: BTreeSet::new(),
            nav_target: None,
            learned: Vec::new(),
            visited: BTreeSet::from([start.cell]),
        }
    }

    pub fn profile(&self) -> &AgentProfile {
        &self.profile
    }

    pub fn map(&self) -> &SemanticMap {
        &self.map
    }

    pub fn plan(&self) -> &SubgoalPlan {
        &self.plan
    }

    pub fn pose(&self) -> AgentPose {
        self.pose
    }

    pub fn nav_target(&self) -> Option<Cell> {
        self.nav_target
    }

    /// Edges added to the map by the most recent observation.
    pub fn learned(&self) -> &[(Edge, EdgeSource)] {
        &self.learned
    }

    /// Consumes the observation that followed the previous action and
    /// picks the next one.
    pub fn step(&mut self, obs: &ObservationBundle) -> Action {
        if let Some(prev) = self.pending.take() {
            self.interpret(&prev, obs.last_success);
        }
        self.learned = update_map(&mut self.map, obs, &self.pose, &self.profile);
        let action = self.decide();
        self.pending = Some(action.clone());
        action
    }

    fn interpret(&mut self, action: &Action, ok: bool) {
        let here = self.pose.cell;
        match action {
            Action::MoveAhead if ok => {
                self.pose.cell = self.pose.faced();
                self.visited.insert(self.pose.cell);
            }
            Action::RotateLeft if ok => self.pose.heading = self.pose.heading.left(),
            Action::RotateRight if ok => self.pose.heading = self.pose.heading.right(),
            Action::MoveAhead | Action::RotateLeft | Action::RotateRight | Action::Stop => {}
            _ => match self.plan.current().cloned() {
                Some(Subgoal::Pickup(c)) => {
                    self.map.clear_sightings(&c, here);
                    if ok {
                        self.holding = Some(c);
                        self.plan.advance();
                    } else {
                        self.ruled_out.insert((c, here));
                        self.plan.rewind_to_goto();
                    }
                }
                Some(Subgoal::PlaceIn(k)) => {
                    if ok {
                        if let Some(c) = self.holding.take() {
                            self.placed.insert((c, here));
                        }
                        self.plan.advance();
                    } else {
                        self.ruled_out.insert((k.name().to_string(), here));
                        self.plan.rewind_to_goto();
                    }
                }
                Some(Subgoal::Heat(_)) | Some(Subgoal::Examine(_)) => {
                    let toggle_on = matches!(action, Action::ToggleOn(_));
                    if ok || toggle_on {
                        // a failed switch-on most likely means it was on already
                        match action {
                            Action::Put(_) => self.holding = None,
                            Action::Pickup(c) => {
                                self.map.clear_sightings(c, here);
                                self.holding = Some(c.clone());
                            }
                            _ => {}
                        }
                        if self.macro_queue.is_empty() {
                            self.plan.advance();
                        }
                    } else {
                        self.macro_queue.clear();
                        if let Some(station) =
                            self.plan.cursor.checked_sub(1).and_then(|i| match &self.plan.subgoals[i] {
                                Subgoal::GoTo(s) => Some(s.clone()),
                                _ => None,
                            })
                        {
                            self.ruled_out.insert((station, here));
                        }
                        self.plan.rewind_to_goto();
                    }
                }
                _ => {}
            },
        }
    }

    fn candidates(&self, class: &str) -> Vec<Cell> {
        self.map
            .sightings(class)
            .into_iter()
            .filter(|c| {
                let key = (class.to_string(), *c);
                !self.ruled_out.contains(&key) && !self.placed.contains(&key)
            })
            .collect()
    }

    /// Nearest reachable candidate by path length, then row-major.
    fn nearest(&self, class: &str) -> Option<Cell> {
        let dist = plan::distances(&self.map, self.pose.cell);
        let w = self.map.width as usize;
        self.candidates(class)
            .into_iter()
            .map(|c| (dist[c.y as usize * w + c.x as usize], c))
            .filter(|(d, _)| *d != u32::MAX)
            .min()
            .map(|(_, c)| c)
    }

    fn decide(&mut self) -> Action {
        self.nav_target = None;
        for _ in 0..=4 * self.plan.len() + 4 {
            let Some(sub) = self.plan.current().cloned() else { return Action::Stop };
            match sub {
                Subgoal::Find(c) => {
                    if self.nearest(&c).is_some() {
                        self.plan.advance();
                        continue;
                    }
                    return self.explore();
                }
                Subgoal::GoTo(c) => match self.nearest(&c) {
                    Some(t) if t == self.pose.cell => {
                        self.plan.advance();
                        continue;
                    }
                    Some(t) => return self.navigate(t),
                    None => return self.explore(),
                },
                Subgoal::Pickup(c) => {
                    if self.holding.as_deref() == Some(c.as_str()) {
                        self.plan.advance();
                        continue;
                    }
                    return Action::Pickup(c);
                }
                Subgoal::PlaceIn(k) => return Action::Put(k),
                Subgoal::Heat(c) => {
                    if self.macro_queue.is_empty() {
                        let mw = ApplianceKind::Microwave;
                        self.macro_queue.extend([
                            Action::Put(mw),
                            Action::ToggleOn(mw),
                            Action::ToggleOff(mw),
                            Action::Pickup(c),
                        ]);
                    }
                    return self.macro_queue.pop_front().expect("filled");
                }
                Subgoal::Examine(c) => {
                    if self.macro_queue.is_empty() {
                        self.macro_queue.extend([Action::ToggleOn(ApplianceKind::Lamp), Action::Examine(c)]);
                    }
                    return self.macro_queue.pop_front().expect("filled");
                }
            }
        }
        Action::Stop
    }

    /// Frontier exploration; once the map has no frontier left, sweeps
    /// the reachable cells not stood on yet, since a fully mapped room can
    /// still hide objects vision failed to report.
    fn explore(&mut self) -> Action {
        if let Some(t) = next_frontier(&self.map, &self.pose) {
            return self.navigate(t);
        }
        for _ in 0..2 {
            let dist = plan::distances(&self.map, self.pose.cell);
            let w = self.map.width as usize;
            let next = self
                .map
                .cells()
                .filter(|c| !self.visited.contains(c))
                .map(|c| (dist[c.y as usize * w + c.x as usize], c))
                .filter(|(d, _)| *d != u32::MAX)
                .min();
            if let Some((_, t)) = next {
                return self.navigate(t);
            }
            self.visited = BTreeSet::from([self.pose.cell]);
        }
        Action::Stop
    }

    fn navigate(&mut self, target: Cell) -> Action {
        self.nav_target = Some(target);
        let Some(path) = plan_path(&self.map, self.pose.cell, target) else { return Action::Stop };
        let Some(next) = path.get(1) else { return Action::Stop };
        let want = self.pose.cell.heading_to(*next).expect("path steps are adjacent");
        turn_toward(self.pose.heading, want)
    }
}

/// MoveAhead when aligned, else the rotation that gets closer (right on a
/// half turn).
pub fn turn_toward(current: Heading, want: Heading) -> Action {
    match (want.index() + 4 - current.index()) % 4 {
        0 => Action::MoveAhead,
        3 => Action::RotateLeft,
        _ => Action::RotateRight,
    }
}
