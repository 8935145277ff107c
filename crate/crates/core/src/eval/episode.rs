//! Single-episode runner and its log.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::agent::{decompose, Agent, AgentProfile, EdgeSource, SemanticMap, Subgoal, SubgoalPlan};
use crate::env::{Action, Effect, World};
use crate::error::{Error, Result};
use crate::grid::{Cell, Edge};
use crate::scene::{AgentPose, Scene};
use crate::seed::DetectionDraws;
use crate::sensors::observe;
use crate::task::{check_goal, TaskSpec};

pub const LOG_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_STEP_BUDGET: u32 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    FailLimit,
    StepBudget,
}

/// An object or appliance within interaction reach.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reachable {
    pub id: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhantomSighting {
    pub class: String,
    pub source_id: String,
    pub apparent_cell: Cell,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnedEdge {
    pub edge: Edge,
    pub source: EdgeSource,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 1-based.
    pub step: u32,
    pub action: Action,
    pub success: bool,
    pub bump: bool,
    /// Pose after the action.
    pub pose: AgentPose,
    /// Plan cursor when the action was chosen.
    pub cursor: usize,
    pub nav_target: Option<Cell>,
    /// Classes in the observation the action was chosen from.
    pub sighted: Vec<String>,
    pub phantoms: Vec<PhantomSighting>,
    /// Edges the agent added to its map from that observation.
    pub learned: Vec<LearnedEdge>,
    /// Within reach after the action.
    pub reach: Vec<Reachable>,
    pub effect: Option<Effect>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeLog {
    pub schema_version: u32,
    pub task_id: String,
    pub variant: usize,
    pub variant_text: String,
    pub start_index: usize,
    pub start: AgentPose,
    pub condition: String,
    pub profile: AgentProfile,
    pub seed: u64,
    pub step_budget: u32,
    pub initial_reach: Vec<Reachable>,
    pub steps: Vec<StepRecord>,
    pub failed_actions: u32,
    pub outcome: Outcome,
    pub plan: Vec<Subgoal>,
    pub subgoal_flags: Vec<bool>,
    pub goal_flags: Vec<bool>,
    pub final_map: SemanticMap,
    pub final_scene_digest: String,
}

impl EpisodeLog {
    pub fn subgoals_done(&self) -> usize {
        self.subgoal_flags.iter().filter(|f| **f).count()
    }

    pub fn bumps(&self) -> usize {
        self.steps.iter().filter(|s| s.bump).count()
    }

    pub fn actions(&self) -> Vec<Action> {
        self.steps.iter().map(|s| s.action.clone()).collect()
    }

    /// Start cell followed by every cell the agent entered.
    pub fn trajectory(&self) -> Vec<Cell> {
        let mut out = vec![self.start.cell];
        for s in &self.steps {
            if out.last() != Some(&s.pose.cell) {
                out.push(s.pose.cell);
            }
        }
        out
    }

    pub fn final_pose(&self) -> AgentPose {
        self.steps.last().map_or(self.start, |s| s.pose)
    }
}

pub fn scene_digest(scene: &Scene) -> String {
    hex::encode(Sha256::digest(scene.to_text().as_bytes()))
}

fn reachable(world: &World) -> Vec<Reachable> {
    let pose = world.pose;
    let mut cells = vec![pose.cell];
    if world.scene.in_bounds(pose.faced()) && world.scene.wall_on_side(pose.cell, pose.heading).is_none() {
        cells.push(pose.faced());
    }
    let mut out: Vec<Reachable> = world
        .scene
        .objects
        .iter()
        .filter(|o| o.cell.is_some_and(|c| cells.contains(&c)))
        .map(|o| Reachable { id: o.id.clone(), class: o.class.clone() })
        .chain(
            world
                .scene
                .appliances
                .iter()
                .filter(|a| cells.contains(&a.cell))
                .map(|a| Reachable { id: a.id.clone(), class: a.kind.name().to_string() }),
        )
        .collect();
    out.sort();
    out
}

/// Everything that fixes one episode.
#[derive(Clone, Debug)]
pub struct EpisodeSpec<'a> {
    /// Floorplan with the condition's disturbances applied.
    pub scene: &'a Scene,
    pub task: &'a TaskSpec,
    pub variant: usize,
    pub start: usize,
    pub condition: &'a str,
    pub profile: AgentProfile,
    pub seed: u64,
    pub step_budget: u32,
}

pub fn run_episode(spec: &EpisodeSpec<'_>) -> Result<EpisodeLog> {
    let task = spec.task;
    let invalid = |m: String| Error::Config(format!("task {}: {m}", task.id));
    let variant_text =
        task.variants.get(spec.variant).ok_or_else(|| invalid(format!("no variant {}", spec.variant)))?.clone();
    let start = *task.start_positions.get(spec.start).ok_or_else(|| invalid(format!("no start {}", spec.start)))?;
    if !spec.scene.in_bounds(start.cell) {
        return Err(invalid(format!("start {start} outside the floorplan")));
    }
    let plan = decompose(task).map_err(|e| invalid(e.to_string()))?;
    let profile = spec.profile;
    let mut world = World::new(spec.scene.clone(), start);
    let mut agent = Agent::new(profile, plan.clone(), spec.scene.width, spec.scene.height, start);
    let initial_reach = reachable(&world);
    let mut steps = Vec::new();
    let mut failed = 0u32;
    let mut bump = false;
    let mut last_success = true;
    let mut goal = check_goal(&world.scene, task);
    let mut outcome = Outcome::StepBudget;
    if goal.iter().all(|g| *g) {
        outcome = Outcome::Success;
    } else {
        for step in 1..=spec.step_budget {
            let draws = DetectionDraws::new(spec.seed, (step - 1) as u64);
            let obs = observe(
                &world.scene,
                &world.pose,
                &profile.cfg,
                draws,
                bump,
                last_success,
                profile.kind.uses_gt_depth(),
            );
            let pose_before = world.pose;
            let action = agent.step(&obs);
            let cursor = agent.plan().cursor;
            let result = world.execute(&action);
            bump = result.bump;
            last_success = result.success;
            if !result.success {
                failed += 1;
            }
            let sighted: BTreeSet<String> = obs.vision.iter().map(|d| d.object_class.clone()).collect();
            steps.push(StepRecord {
                step,
                action,
                success: result.success,
                bump: result.bump,
                pose: world.pose,
                cursor,
                nav_target: agent.nav_target(),
                sighted: sighted.into_iter().collect(),
                phantoms: obs
                    .vision
                    .iter()
                    .filter(|d| d.phantom)
                    .map(|d| PhantomSighting {
                        class: d.object_class.clone(),
                        source_id: d.source_id.clone(),
                        apparent_cell: d.apparent_cell(&pose_before),
                    })
                    .collect(),
                learned: agent
                    .learned()
                    .iter()
                    .map(|(edge, source)| LearnedEdge { edge: *edge, source: *source })
                    .collect(),
                reach: reachable(&world),
                effect: result.effect,
            });
            goal = check_goal(&world.scene, task);
            if goal.iter().all(|g| *g) {
                outcome = Outcome::Success;
                break;
            }
            if failed >= profile.fail_limit {
                outcome = Outcome::FailLimit;
                break;
            }
        }
    }
    let subgoal_flags = subgoal_flags(&plan, &initial_reach, &steps, outcome == Outcome::Success);
    Ok(EpisodeLog {
        schema_version: LOG_SCHEMA_VERSION,
        task_id: task.id.clone(),
        variant: spec.variant,
        variant_text,
        start_index: spec.start,
        start,
        condition: spec.condition.to_string(),
        profile,
        seed: spec.seed,
        step_budget: spec.step_budget,
        initial_reach,
        steps,
        failed_actions: failed,
        outcome,
        plan: plan.subgoals,
        subgoal_flags,
        goal_flags: goal,
        final_map: agent.map().clone(),
        final_scene_digest: scene_digest(&world.scene),
    })
}

/// First step at which an open-loop replay departed from the log.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("replay diverged at step {step}")]
pub struct ReplayMismatch {
    pub step: u32,
}

/// Re-executes the logged actions on `scene` (the condition's scene) from
/// the logged start, checking each step's success, bump, pose and effect,
/// and the final scene digest.
pub fn replay(scene: &Scene, log: &EpisodeLog) -> Result<World, ReplayMismatch> {
    let mut world = World::new(scene.clone(), log.start);
    for rec in &log.steps {
        let r = world.execute(&rec.action);
        if r.success != rec.success || r.bump != rec.bump || world.pose != rec.pose || r.effect != rec.effect {
            return Err(ReplayMismatch { step: rec.step });
        }
    }
    if scene_digest(&world.scene) != log.final_scene_digest {
        return Err(ReplayMismatch { step: log.steps.len() as u32 + 1 });
    }
    Ok(world)
}

/// Completed-prefix flags for `plan` over a recorded trace. A subgoal
/// completes only once every earlier one has:
///
/// - `Find(c)`: `c` has been sighted at some step so far;
/// - `GoTo(t)`: an instance of `t` not yet picked up is within reach;
/// - `Pickup`, `PlaceIn`, `Heat`, `Examine`: the matching effect occurs.
///
/// A successful episode completes every subgoal.
pub fn subgoal_flags(
    plan: &SubgoalPlan,
    initial_reach: &[Reachable],
    steps: &[StepRecord],
    success: bool,
) -> Vec<bool> {
    let subs = &plan.subgoals;
    if success {
        return vec![true; subs.len()];
    }
    let mut k = 0;
    let mut sighted: BTreeSet<&str> = BTreeSet::new();
    let mut consumed: BTreeSet<&str> = BTreeSet::new();
    let mut held: Option<&str> = None;
    let mut reach = initial_reach;
    let passive = |k: &mut usize, sighted: &BTreeSet<&str>, reach: &[Reachable], consumed: &BTreeSet<&str>| {
        while let Some(s) = subs.get(*k) {
            let done = match s {
                Subgoal::Find(c) => sighted.contains(c.as_str()),
                Subgoal::GoTo(t) => reach.iter().any(|r| r.class == *t && !consumed.contains(r.id.as_str())),
                _ => false,
            };
            if !done {
                break;
            }
            *k += 1;
        }
    };
    passive(&mut k, &sighted, reach, &consumed);
    for rec in steps {
        sighted.extend(rec.sighted.iter().map(String::as_str));
        passive(&mut k, &sighted, reach, &consumed);
        if let Some(e) = &rec.effect {
            if let Effect::PickedUp { id, .. } = e {
                held = Some(id);
            }
            let done = match (subs.get(k), e) {
                (Some(Subgoal::Pickup(c)), Effect::PickedUp { id, class }) if c == class => {
                    consumed.insert(id);
                    true
                }
                (Some(Subgoal::PlaceIn(k)), Effect::Placed { receptacle_kind, .. }) => k == receptacle_kind,
                (Some(Subgoal::Heat(_)), Effect::SwitchedOff { heated, .. }) => {
                    held.is_some_and(|h| heated.iter().any(|x| x == h))
                }
                (Some(Subgoal::Examine(c)), Effect::Examined { class, .. }) => c == class,
                _ => false,
            };
            if done {
                k += 1;
            }
        }
        reach = &rec.reach;
        passive(&mut k, &sighted, reach, &consumed);
    }
    (0..subs.len()).map(|i| i < k).collect()
}

/// Fraction of the plan completed by the episode.
pub fn subgoal_progress(log: &EpisodeLog) -> f64 {
    if log.plan.is_empty() {
        return if log.outcome == Outcome::Success { 1.0 } else { 0.0 };
    }
    log.subgoals_done() as f64 / log.plan.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{AgentKind, SubgoalPlan};
    use crate::grid::Heading;
    use crate::task::GoalCondition;

    fn task(goal: Vec<GoalCondition>) -> TaskSpec {
        TaskSpec {
            id: "t".into(),
            floorplan: "x.scene".into(),
            goal,
            variants: vec!["a".into(), "b".into(), "c".into()],
            start_positions: vec![
                AgentPose::new(0, 0, Heading::East),
                AgentPose::new(4, 0, Heading::West),
                AgentPose::new(0, 4, Heading::North),
                AgentPose::new(4, 4, Heading::North),
            ],
            min_start_distance: 3,
        }
    }

    fn spec<'a>(scene: &'a Scene, task: &'a TaskSpec, kind: AgentKind) -> EpisodeSpec<'a> {
        EpisodeSpec {
            scene,
            task,
            variant: 0,
            start: 0,
            condition: "baseline",
            profile: AgentProfile::new(kind),
            seed: 1,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    #[test]
    fn satisfied_goal_is_immediate_success() {
        let s = Scene::parse("size 5 5\nobject b Bottle 1 1 in=s\nappliance s Sink 1 1\n").unwrap();
        let t = task(vec![GoalCondition::ObjectIn { class: "Bottle".into(), container: crate::ApplianceKind::Sink }]);
        let log = run_episode(&spec(&s, &t, AgentKind::VisionOnly)).unwrap();
        assert_eq!(log.outcome, Outcome::Success);
        assert!(log.steps.is_empty());
        assert_eq!(subgoal_progress(&log), 1.0);
    }

    #[test]
    fn open_room_pick_and_place() {
        let s = Scene::parse("size 5 5\nobject b Bottle 3 3\nappliance s Sink 4 0\n").unwrap();
        let t = task(vec![GoalCondition::ObjectIn { class: "Bottle".into(), container: crate::ApplianceKind::Sink }]);
        for kind in AgentKind::ALL {
            let log = run_episode(&spec(&s, &t, kind)).unwrap();
            assert_eq!(log.outcome, Outcome::Success, "{kind}");
            assert_eq!(log.failed_actions, 0);
            assert_eq!(run_episode(&spec(&s, &t, kind)).unwrap(), log);
        }
    }

    #[test]
    fn zero_steps_zero_progress() {
        let plan = SubgoalPlan::new(vec![Subgoal::Find("Plate".into())]);
        assert_eq!(subgoal_flags(&plan, &[], &[], false), vec![false]);
    }
}
