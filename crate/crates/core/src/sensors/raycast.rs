//! Exact edge-walking ray traversal over the cell grid.
//!
//! The walker visits cells in the order the ray enters them and stops at
//! every cell edge it crosses, so material interaction is decided per edge.
//! When a ray passes exactly through a grid vertex the x-edge is crossed
//! first, then the y-edge.

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, Edge, EdgeAxis, Material, Point, Vec2};
use crate::scene::Scene;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorMode {
    Vision,
    Depth,
    GroundTruth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interaction {
    Pass,
    Reflect,
    Stop,
}

/// How each channel treats each wall material.
pub fn interaction(mode: SensorMode, material: Material) -> Interaction {
    use Interaction::*;
    match (mode, material) {
        (_, Material::Opaque) => Stop,
        (SensorMode::Vision, Material::Glass) => Pass,
        (SensorMode::Vision, Material::Mirror) => Reflect,
        (SensorMode::Depth, Material::Glass) => Pass,
        (SensorMode::Depth, Material::Mirror) => Stop,
        (SensorMode::GroundTruth, _) => Stop,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayLimits {
    pub max_range: f64,
    /// Mirrors a vision ray may bounce off; the next mirror stops it.
    pub reflection_cap: u32,
}

impl Default for RayLimits {
    fn default() -> Self {
        RayLimits { max_range: 8.0, reflection_cap: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Terminal {
    Surface { material: Material, edge: Edge },
    MaxRange,
}

/// Stretch of the ray inside one cell, as path lengths from the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RaySegment {
    pub cell: Cell,
    pub enter: f64,
    pub exit: f64,
    /// Mirrors bounced off before this segment.
    pub reflections: u32,
    /// Distance from the segment's midpoint to the cell centre.
    pub off_center: f64,
}

impl RaySegment {
    pub fn len(&self) -> f64 {
        self.exit - self.enter
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.enter + self.exit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Reflected,
    Stopped,
}

/// A walled edge met by the ray.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WallEvent {
    pub edge: Edge,
    pub material: Material,
    pub at: f64,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayHit {
    pub mode: SensorMode,
    pub path_length: f64,
    pub terminal: Terminal,
    /// Vision only: the ray bounced off at least one mirror.
    pub reflected: bool,
    pub segments: Vec<RaySegment>,
    pub events: Vec<WallEvent>,
}

impl RayHit {
    /// Path length up to the first mirror bounce (the whole ray if none).
    pub fn unreflected_length(&self) -> f64 {
        self.events.iter().find(|e| e.outcome == Outcome::Reflected).map_or(self.path_length, |e| e.at)
    }
}

const VERTEX_EPS: f64 = 1e-12;

/// Incremental walker shared by the sensors and the agents' map updates.
#[derive(Clone, Debug)]
pub(crate) struct Walker {
    pos: Point,
    dir: Vec2,
    cell: Cell,
    traveled: f64,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Crossing {
    /// Distance from the current position to the crossing.
    pub t: f64,
    pub edge: Edge,
    pub next: Cell,
    pub axis: EdgeAxis,
    boundary: f64,
}

impl Walker {
    pub fn new(origin: Point, dir: Vec2) -> Self {
        Walker { pos: origin, dir, cell: origin.cell(), traveled: 0.0 }
    }

    pub fn traveled(&self) -> f64 {
        self.traveled
    }

    pub fn next_crossing(&self) -> Crossing {
        let axis_t = |p: f64, d: f64, c: i32| -> (f64, f64, i32) {
            if d > 0.0 {
                let b = (c + 1) as f64;
                (((b - p) / d).max(0.0), b, 1)
            } else if d < 0.0 {
                let b = c as f64;
                (((b - p) / d).max(0.0), b, -1)
            } else {
                (f64::INFINITY, 0.0, 0)
            }
        };
        let (tx, bx, sx) = axis_t(self.pos.x, self.dir.x, self.cell.x);
        let (ty, by, sy) = axis_t(self.pos.y, self.dir.y, self.cell.y);
        // crossings this close count as a vertex hit, resolved x-edge first
        let (t, next, axis, boundary) = if tx <= ty + VERTEX_EPS {
            (tx, Cell::new(self.cell.x + sx, self.cell.y), EdgeAxis::Vertical, bx)
        } else {
            (ty, Cell::new(self.cell.x, self.cell.y + sy), EdgeAxis::Horizontal, by)
        };
        let edge = Edge::new(self.cell, next).expect("walker steps to a neighbour");
        Crossing { t, edge, next, axis, boundary }
    }

    /// Moves onto the crossing point, snapping to the grid line.
    pub fn advance_to(&mut self, c: &Crossing) {
        self.pos = self.pos.offset(self.dir, c.t);
        match c.axis {
            EdgeAxis::Vertical => self.pos.x = c.boundary,
            EdgeAxis::Horizontal => self.pos.y = c.boundary,
        }
        self.traveled += c.t;
    }

    pub fn enter(&mut self, c: &Crossing) {
        self.cell = c.next;
    }

    /// Segment from the current position to `exit` along the path.
    pub fn segment(&self, exit: f64, reflections: u32) -> RaySegment {
        let mid = self.pos.offset(self.dir, 0.5 * (exit - self.traveled));
        RaySegment {
            cell: self.cell,
            enter: self.traveled,
            exit,
            reflections,
            off_center: mid.distance(self.cell.center()),
        }
    }

    pub fn reflect(&mut self, c: &Crossing) {
        match c.axis {
            EdgeAxis::Vertical => self.dir.x = -self.dir.x,
            EdgeAxis::Horizontal => self.dir.y = -self.dir.y,
        }
    }
}

/// Traces one ray from `origin` along the unit vector `dir`.
pub fn cast_ray(scene: &Scene, origin: Point, dir: Vec2, mode: SensorMode, limits: RayLimits) -> RayHit {
    debug_assert!(scene.in_bounds(origin.cell()), "ray origin outside the grid");
    let mut w = Walker::new(origin, dir);
    let mut segments = Vec::new();
    let mut events = Vec::new();
    let mut reflections = 0u32;
    let terminal = loop {
        let c = w.next_crossing();
        let enter = w.traveled();
        if enter + c.t >= limits.max_range {
            segments.push(w.segment(limits.max_range, reflections));
            break Terminal::MaxRange;
        }
        segments.push(w.segment(enter + c.t, reflections));
        w.advance_to(&c);
        let Some(material) = scene.wall(&c.edge) else {
            w.enter(&c);
            continue;
        };
        let at = w.traveled();
        let mut act = interaction(mode, material);
        if act == Interaction::Reflect && reflections >= limits.reflection_cap {
            act = Interaction::Stop;
        }
        match act {
            Interaction::Pass => {
                events.push(WallEvent { edge: c.edge, material, at, outcome: Outcome::Passed });
                w.enter(&c);
            }
            Interaction::Reflect => {
                events.push(WallEvent { edge: c.edge, material, at, outcome: Outcome::Reflected });
                reflections += 1;
                w.reflect(&c);
            }
            Interaction::Stop => {
                events.push(WallEvent { edge: c.edge, material, at, outcome: Outcome::Stopped });
                break Terminal::Surface { material, edge: c.edge };
            }
        }
    };
    let path_length = match terminal {
        Terminal::MaxRange => limits.max_range,
        Terminal::Surface { .. } => w.traveled(),
    };
    RayHit { mode, path_length, terminal, reflected: reflections > 0, segments, events }
}

/// Straight-line walk through an unwalled grid of the given size, for
/// reconstructing what a range reading implies. Returns the segments up
/// to `length` and the edges crossed at exactly `length`.
pub fn walk_straight(width: u32, height: u32, origin: Point, dir: Vec2, length: f64) -> (Vec<RaySegment>, Vec<Edge>) {
    const EPS: f64 = 1e-9;
    let in_bounds = |c: Cell| c.x >= 0 && c.y >= 0 && c.x < width as i32 && c.y < height as i32;
    let mut w = Walker::new(origin, dir);
    let mut segments = Vec::new();
    let mut at_end = Vec::new();
    loop {
        let c = w.next_crossing();
        let enter = w.traveled();
        let exit = enter + c.t;
        if exit > length + EPS {
            if length > enter + EPS {
                segments.push(w.segment(length, 0));
            }
            break;
        }
        if exit >= length - EPS {
            // collect every edge crossed at the reading (several at a vertex)
            at_end.push(c.edge);
            if exit > enter {
                segments.push(w.segment(exit, 0));
            }
            w.advance_to(&c);
            if !in_bounds(c.next) {
                break;
            }
            w.enter(&c);
            continue;
        }
        segments.push(w.segment(exit, 0));
        w.advance_to(&c);
        if !in_bounds(c.next) {
            break;
        }
        w.enter(&c);
    }
    (segments, at_end)
}
