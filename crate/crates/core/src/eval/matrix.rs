//! The experiment matrix: tasks × variants × starts × conditions × profiles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::episode::{run_episode, EpisodeLog, EpisodeSpec};
use crate::agent::{decompose, AgentProfile};
use crate::disturbance::{compose, Disturbance};
use crate::error::{Error, Result};
use crate::scene::Scene;
use crate::seed::stable_hash;
use crate::task::{validate_task, TaskSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub label: String,
    /// Empty for the undisturbed baseline.
    pub disturbances: Vec<Disturbance>,
}

impl Condition {
    pub fn baseline() -> Self {
        Condition { label: "baseline".into(), disturbances: vec![] }
    }

    pub fn new(label: impl Into<String>, disturbances: Vec<Disturbance>) -> Self {
        Condition { label: label.into(), disturbances }
    }
}

/// A task together with its parsed floorplan.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskEntry {
    pub spec: TaskSpec,
    pub floorplan: Scene,
}

#[derive(Clone, Debug)]
pub struct Matrix {
    pub master_seed: u64,
    pub tasks: Vec<TaskEntry>,
    pub conditions: Vec<Condition>,
    pub profiles: Vec<AgentProfile>,
    pub step_budget: u32,
}

/// Coordinates of one episode, as indices into the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpisodeKey {
    pub task: usize,
    pub variant: usize,
    pub start: usize,
    pub condition: usize,
    pub profile: usize,
}

/// Stable per-episode seed; depends on names, not on matrix positions.
pub fn episode_seed(master_seed: u64, task: &str, variant: usize, start: usize, condition: &str, profile: &str) -> u64 {
    stable_hash(&[
        &master_seed.to_le_bytes(),
        task.as_bytes(),
        &(variant as u64).to_le_bytes(),
        &(start as u64).to_le_bytes(),
        condition.as_bytes(),
        profile.as_bytes(),
    ])
}

impl Matrix {
    pub fn cardinality(&self) -> usize {
        let runs: usize = self.tasks.iter().map(|t| t.spec.variants.len() * t.spec.start_positions.len()).sum();
        runs * self.conditions.len() * self.profiles.len()
    }

    /// Every episode key in task, variant, start, condition, profile order.
    pub fn keys(&self) -> Vec<EpisodeKey> {
        let mut out = Vec::with_capacity(self.cardinality());
        for (task, t) in self.tasks.iter().enumerate() {
            for variant in 0..t.spec.variants.len() {
                for start in 0..t.spec.start_positions.len() {
                    for condition in 0..self.conditions.len() {
                        for profile in 0..self.profiles.len() {
                            out.push(EpisodeKey { task, variant, start, condition, profile });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn seed_for(&self, k: &EpisodeKey) -> u64 {
        episode_seed(
            self.master_seed,
            &self.tasks[k.task].spec.id,
            k.variant,
            k.start,
            &self.conditions[k.condition].label,
            self.profiles[k.profile].kind.name(),
        )
    }

    /// Disturbed floorplans indexed `[task][condition]`, after checking
    /// everything an episode could trip over.
    pub fn prepare(&self) -> Result<Vec<Vec<Scene>>> {
        let mut labels: Vec<&str> = self.conditions.iter().map(|c| c.label.as_str()).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate condition label `{}`", w[0])));
        }
        let mut kinds: Vec<&str> = self.profiles.iter().map(|p| p.kind.name()).collect();
        kinds.sort();
        if let Some(w) = kinds.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate agent profile `{}`", w[0])));
        }
        for p in &self.profiles {
            p.cfg.validate().map_err(Error::Config)?;
            if p.fail_limit == 0 {
                return Err(Error::Config("fail_limit must be at least 1".into()));
            }
        }
        let mut out = Vec::with_capacity(self.tasks.len());
        for t in &self.tasks {
            let v = t.floorplan.validate();
            if !v.is_empty() {
                return Err(Error::Invalid { context: format!("floorplan of task {}", t.spec.id), violations: v });
            }
            let v = validate_task(&t.spec, &t.floorplan);
            if !v.is_empty() {
                return Err(Error::Invalid { context: format!("task {}", t.spec.id), violations: v });
            }
            decompose(&t.spec).map_err(|e| Error::Config(format!("task {}: {e}", t.spec.id)))?;
            let mut row = Vec::with_capacity(self.conditions.len());
            for c in &self.conditions {
                let scene = compose(&t.floorplan, &c.disturbances).map_err(|e| Error::Invalid {
                    context: format!("condition {} on task {}: {}", c.label, t.spec.id, e.disturbance),
                    violations: e.violations.clone(),
                })?;
                row.push(scene);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Runs every episode of the matrix on up to `workers` threads. Output is
/// in [`Matrix::keys`] order whatever the worker count.
pub fn run_matrix(matrix: &Matrix, workers: usize) -> Result<Vec<EpisodeLog>> {
    let scenes = matrix.prepare()?;
    let keys = matrix.keys();
    let run = |k: &EpisodeKey| {
        let t = &matrix.tasks[k.task];
        run_episode(&EpisodeSpec {
            scene: &scenes[k.task][k.condition],
            task: &t.spec,
            variant: k.variant,
            start: k.start,
            condition: &matrix.conditions[k.condition].label,
            profile: matrix.profiles[k.profile],
            seed: matrix.seed_for(k),
            step_budget: matrix.step_budget,
        })
    };
    if workers <= 1 {
        return keys.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    pool.install(|| keys.par_iter().map(run).collect())
}
