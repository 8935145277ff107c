//! Simulated sensing channels: semantic vision, depth, ground-truth depth
//! and the bump signal.
//!
//! All channels cast the same fan of rays from the agent's cell centre and
//! differ only in how they treat wall materials (see [`raycast::interaction`]).
//! Vision additionally depends on the scene's light level: each visible
//! object is reported with probability `min(1, light / light_floor)`, and
//! the free-space extent vision can vouch for shrinks by the same factor.

pub mod raycast;

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, Point, Vec2};
use crate::scene::{AgentPose, Scene};
use crate::seed::DetectionDraws;
pub use raycast::{cast_ray, RayHit, RayLimits, RaySegment, SensorMode, Terminal};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SensorConfig {
    /// Field of view in degrees.
    pub fov: f64,
    pub ray_count: usize,
    /// Cells.
    pub max_range: f64,
    /// Light level at and above which vision detects everything in view.
    pub light_floor: f64,
    pub reflection_cap: u32,
}

impl Default for SensorConfig {
    fn default() -> Self {
        SensorConfig { fov: 90.0, ray_count: 31, max_range: 8.0, light_floor: 0.25, reflection_cap: 2 }
    }
}

impl SensorConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.fov > 0.0 && self.fov <= 180.0) {
            return Err(format!("fov {} must be in (0, 180]", self.fov));
        }
        if self.ray_count == 0 || self.ray_count.is_multiple_of(2) {
            return Err(format!("ray_count {} must be odd and positive", self.ray_count));
        }
        if !(self.max_range >= 1.0 && self.max_range.is_finite()) {
            return Err(format!("max_range {} must be at least 1", self.max_range));
        }
        if !(self.light_floor > 0.0 && self.light_floor <= 1.0) {
            return Err(format!("light_floor {} must be in (0, 1]", self.light_floor));
        }
        Ok(())
    }

    pub fn limits(&self) -> RayLimits {
        RayLimits { max_range: self.max_range, reflection_cap: self.reflection_cap }
    }

    /// Ray bearings relative to the heading, left to right.
    pub fn bearings(&self) -> Vec<f64> {
        if self.ray_count == 1 {
            return vec![0.0];
        }
        let step = self.fov / (self.ray_count - 1) as f64;
        (0..self.ray_count).map(|i| -0.5 * self.fov + step * i as f64).collect()
    }

    /// Index of the ray cast at relative `bearing`.
    pub fn ray_index(&self, bearing: f64) -> usize {
        if self.ray_count == 1 {
            return 0;
        }
        let step = self.fov / (self.ray_count - 1) as f64;
        (((bearing + 0.5 * self.fov) / step).round().max(0.0) as usize).min(self.ray_count - 1)
    }

    /// Probability that a visible object is detected at `light`.
    pub fn detection_probability(&self, light: f64) -> f64 {
        (light / self.light_floor).clamp(0.0, 1.0)
    }
}

/// Absolute direction of a ray at relative `bearing` from `pose`.
pub fn ray_direction(pose: &AgentPose, bearing: f64) -> Vec2 {
    Vec2::from_bearing(pose.heading.degrees() + bearing)
}

pub fn ray_origin(pose: &AgentPose) -> Point {
    pose.cell.center()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub object_class: String,
    /// Path length to the middle of the ray's stretch through the object's
    /// cell, taking the ray that passes closest to the cell centre.
    pub apparent_range: f64,
    /// Degrees relative to the heading of the emitting ray.
    pub apparent_bearing: f64,
    /// Seen through at least one mirror bounce. Ground truth for logs;
    /// agents never read it.
    pub phantom: bool,
    /// Ground truth id of the object or appliance; agents never read it.
    pub source_id: String,
}

impl Detection {
    /// Cell the detection appears to lie in when taken at face value.
    pub fn apparent_cell(&self, pose: &AgentPose) -> Cell {
        ray_origin(pose).offset(ray_direction(pose, self.apparent_bearing), self.apparent_range).cell()
    }
}

/// What vision can vouch for along one ray, independent of detections.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VisionRay {
    /// Distance along the emitted bearing that is seen to be open floor.
    pub free_range: f64,
    /// A surface is visible at `free_range`.
    pub wall_seen: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservationBundle {
    pub vision: Vec<Detection>,
    pub vision_rays: Vec<VisionRay>,
    pub depth: Vec<f64>,
    pub gt_depth: Option<Vec<f64>>,
    /// The previous MoveAhead was blocked.
    pub bump: bool,
    /// The previous action succeeded.
    pub last_success: bool,
}

/// Everything a vision fan could report at full light, before dropout.
pub fn candidate_detections(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig) -> Vec<Detection> {
    let targets: Vec<(Cell, &str, &str)> = scene
        .objects
        .iter()
        .filter_map(|o| o.cell.map(|c| (c, o.id.as_str(), o.class.as_str())))
        .chain(scene.appliances.iter().map(|a| (a.cell, a.id.as_str(), a.kind.name())))
        .collect();
    // (direct, phantom) best detection per target
    let mut best: Vec<[Option<(f64, Detection)>; 2]> = vec![[None, None]; targets.len()];
    for bearing in cfg.bearings() {
        let hit = cast_ray(scene, ray_origin(pose), ray_direction(pose, bearing), SensorMode::Vision, cfg.limits());
        for seg in hit.segments.iter().filter(|s| s.len() > 1e-12) {
            for (i, (cell, id, class)) in targets.iter().enumerate() {
                if *cell != seg.cell {
                    continue;
                }
                let phantom = seg.reflections > 0;
                let slot = &mut best[i][phantom as usize];
                if slot.as_ref().is_none_or(|(off, _)| seg.off_center < *off - 1e-12) {
                    *slot = Some((
                        seg.off_center,
                        Detection {
                            object_class: class.to_string(),
                            apparent_range: seg.midpoint(),
                            apparent_bearing: bearing,
                            phantom,
                            source_id: id.to_string(),
                        },
                    ));
                }
            }
        }
    }
    best.into_iter().flat_map(|pair| pair.into_iter().flatten().map(|(_, d)| d)).collect()
}

/// Ids of everything some vision ray passes over before terminating.
pub fn candidate_visible(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig) -> Vec<String> {
    let mut ids: Vec<String> = candidate_detections(scene, pose, cfg).into_iter().map(|d| d.source_id).collect();
    ids.sort();
    ids.dedup();
    ids
}

/// Semantic detections after light-dependent dropout. An object is kept
/// when its per-step uniform draw falls below the detection probability,
/// so a brighter scene never reports less than a darker one.
pub fn sense_vision(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig, draws: DetectionDraws) -> Vec<Detection> {
    let p = cfg.detection_probability(scene.light_level);
    candidate_detections(scene, pose, cfg).into_iter().filter(|d| draws.uniform(&d.source_id) < p).collect()
}

pub fn sense_vision_rays(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig) -> Vec<VisionRay> {
    let visible = cfg.max_range * cfg.detection_probability(scene.light_level);
    cfg.bearings()
        .into_iter()
        .map(|b| {
            let hit = cast_ray(scene, ray_origin(pose), ray_direction(pose, b), SensorMode::Vision, cfg.limits());
            let prefix = hit.unreflected_length();
            let surface = !hit.reflected && matches!(hit.terminal, Terminal::Surface { .. });
            if prefix > visible {
                VisionRay { free_range: visible, wall_seen: false }
            } else {
                VisionRay { free_range: prefix, wall_seen: surface }
            }
        })
        .collect()
}

fn sense_ranges(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig, mode: SensorMode) -> Vec<f64> {
    cfg.bearings()
        .into_iter()
        .map(|b| cast_ray(scene, ray_origin(pose), ray_direction(pose, b), mode, cfg.limits()).path_length)
        .collect()
}

pub fn sense_depth(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig) -> Vec<f64> {
    sense_ranges(scene, pose, cfg, SensorMode::Depth)
}

pub fn sense_gt_depth(scene: &Scene, pose: &AgentPose, cfg: &SensorConfig) -> Vec<f64> {
    sense_ranges(scene, pose, cfg, SensorMode::GroundTruth)
}

/// Full observation at `pose`.
pub fn observe(
    scene: &Scene,
    pose: &AgentPose,
    cfg: &SensorConfig,
    draws: DetectionDraws,
    bump: bool,
    last_success: bool,
    with_gt_depth: bool,
) -> ObservationBundle {
    ObservationBundle {
        vision: sense_vision(scene, pose, cfg, draws),
        vision_rays: sense_vision_rays(scene, pose, cfg),
        depth: sense_depth(scene, pose, cfg),
        gt_depth: with_gt_depth.then(|| sense_gt_depth(scene, pose, cfg)),
        bump,
        last_success,
    }
}
