//! Run configuration (TOML).
//!
//! ```toml
//! master_seed = 2024
//! tasks = ["../tasks/t1_bottle_counter.task"]
//! agents = ["visiononly", "mapdepth", "mapgtdepth"]
//! fail_limit = 10
//! step_budget = 500
//! workers = 4
//! output = "../../out/glasswall"
//!
//! [sensor]
//! fov = 90.0
//!
//! [[condition]]
//! label = "baseline"
//! disturbances = []
//!
//! [[condition]]
//! label = "glasswall"
//! disturbances = ["../disturbances/glasswall.dist"]
//! ```
//!
//! Relative paths resolve against the config file's directory; a task's
//! floorplan resolves against the task file's directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::agent::{AgentKind, AgentProfile, DEFAULT_FAIL_LIMIT};
use crate::disturbance::{parse_disturbances, Disturbance};
use crate::error::{Error, Result};
use crate::eval::episode::DEFAULT_STEP_BUDGET;
use crate::eval::{Condition, Matrix, TaskEntry};
use crate::scene::Scene;
use crate::sensors::SensorConfig;
use crate::task::TaskSpec;

fn default_fail_limit() -> u32 {
    DEFAULT_FAIL_LIMIT
}

fn default_step_budget() -> u32 {
    DEFAULT_STEP_BUDGET
}

fn default_workers() -> usize {
    1
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionConfig {
    pub label: String,
    #[serde(default)]
    pub disturbances: Vec<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub master_seed: u64,
    pub tasks: Vec<PathBuf>,
    pub agents: Vec<AgentKind>,
    #[serde(default = "default_fail_limit")]
    pub fail_limit: u32,
    #[serde(default = "default_step_budget")]
    pub step_budget: u32,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub sensor: SensorConfig,
    #[serde(rename = "condition")]
    pub conditions: Vec<ConditionConfig>,
}

/// A config with every referenced file read, parsed and validated.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub matrix: Matrix,
    /// `output` resolved against the config directory.
    pub output: PathBuf,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_scene(path: &Path) -> Result<Scene> {
    let scene = Scene::parse(&read(path)?).map_err(|source| Error::Parse { path: path.into(), source })?;
    let v = scene.validate();
    if !v.is_empty() {
        return Err(Error::Invalid { context: path.display().to_string(), violations: v });
    }
    Ok(scene)
}

pub fn load_disturbances(path: &Path) -> Result<Vec<Disturbance>> {
    parse_disturbances(&read(path)?).map_err(|source| Error::Parse { path: path.into(), source })
}

/// A task file and the floorplan it names.
pub fn load_task(path: &Path) -> Result<TaskEntry> {
    let spec = TaskSpec::parse(&read(path)?).map_err(|source| Error::Parse { path: path.into(), source })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let floorplan = load_scene(&base.join(&spec.floorplan))?;
    Ok(TaskEntry { spec, floorplan })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.conditions.iter().all(|c| !c.disturbances.is_empty()) {
            return Err(Error::Config("at least one condition must be the undisturbed baseline".into()));
        }
        if self.fail_limit == 0 {
            return Err(Error::Config("fail_limit must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.sensor.validate().map_err(Error::Config)
    }

    pub fn profiles(&self) -> Vec<AgentProfile> {
        self.agents.iter().map(|k| AgentProfile { kind: *k, cfg: self.sensor, fail_limit: self.fail_limit }).collect()
    }
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let config = RunConfig::parse(&read(path)?).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        other => other,
    })?;
    config.validate()?;
    let base = path.parent().unwrap_or(Path::new("."));
    let tasks = config.tasks.iter().map(|t| load_task(&base.join(t))).collect::<Result<Vec<_>>>()?;
    let conditions = config
        .conditions
        .iter()
        .map(|c| {
            let mut ds = Vec::new();
            for p in &c.disturbances {
                ds.extend(load_disturbances(&base.join(p))?);
            }
            Ok(Condition::new(c.label.clone(), ds))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix {
        master_seed: config.master_seed,
        tasks,
        conditions,
        profiles: config.profiles(),
        step_budget: config.step_budget,
    };
    matrix.prepare()?;
    Ok(LoadedConfig { output: base.join(&config.output), config, matrix })
}
