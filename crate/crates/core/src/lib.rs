//! Deterministic grid-world household simulator with sensor disturbances,
//! map-building agents and a robustness evaluation harness.

pub mod agent;
pub mod config;
pub mod disturbance;
pub mod env;
pub mod error;
pub mod eval;
pub mod grid;
pub mod scene;
pub mod seed;
pub mod sensors;
pub mod task;
mod text;

pub use disturbance::Disturbance;
pub use env::{Action, ActionResult, World};
pub use error::{Error, ParseError, Result};
pub use grid::{Cell, Edge, Heading, Material};
pub use scene::{AgentPose, ApplianceKind, Scene, Violation};
pub use sensors::{ObservationBundle, SensorConfig};
pub use task::{GoalCondition, TaskSpec};
