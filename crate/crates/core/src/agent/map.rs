//! The agent's accumulated spatial-semantic map.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AgentKind, AgentProfile};
use crate::grid::{Cell, Edge, Heading};
use crate::scene::AgentPose;
use crate::sensors::raycast::walk_straight;
use crate::sensors::{ray_direction, ray_origin, ObservationBundle};

const RANGE_EPS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellState {
    Unknown,
    Free,
    Blocked,
}

/// Which channel taught the agent about an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSource {
    Bump,
    Vision,
    Depth,
    GtDepth,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemanticMap {
    pub width: u32,
    pub height: u32,
    obstacle: Vec<CellState>,
    explored: Vec<bool>,
    semantic: BTreeMap<String, Vec<u32>>,
    pub blocked_edges: BTreeSet<Edge>,
}

impl SemanticMap {
    pub fn new(width: u32, height: u32) -> Self {
        let n = (width * height) as usize;
        SemanticMap {
            width,
            height,
            obstacle: vec![CellState::Unknown; n],
            explored: vec![false; n],
            semantic: BTreeMap::new(),
            blocked_edges: BTreeSet::new(),
        }
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && c.x < self.width as i32 && c.y < self.height as i32
    }

    fn idx(&self, c: Cell) -> usize {
        debug_assert!(self.in_bounds(c));
        c.y as usize * self.width as usize + c.x as usize
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height as i32).flat_map(move |y| (0..self.width as i32).map(move |x| Cell::new(x, y)))
    }

    pub fn state(&self, c: Cell) -> CellState {
        self.obstacle[self.idx(c)]
    }

    pub fn is_explored(&self, c: Cell) -> bool {
        self.explored[self.idx(c)]
    }

    pub fn mark_free(&mut self, c: Cell) {
        let i = self.idx(c);
        self.obstacle[i] = CellState::Free;
        self.explored[i] = true;
    }

    pub fn mark_blocked(&mut self, c: Cell) {
        let i = self.idx(c);
        self.obstacle[i] = CellState::Blocked;
        self.explored[i] = true;
    }

    /// Adds an edge between two in-bounds cells; false if already known or
    /// not an interior edge.
    pub fn block_edge(&mut self, e: Edge) -> bool {
        let (a, b) = e.cells();
        self.in_bounds(a) && self.in_bounds(b) && self.blocked_edges.insert(e)
    }

    pub fn edge_blocked(&self, e: &Edge) -> bool {
        self.blocked_edges.contains(e)
    }

    /// Neighbour in `h` if the map lets the agent step there.
    pub fn passable(&self, from: Cell, h: Heading) -> Option<Cell> {
        let to = from.step(h);
        (self.in_bounds(to) && self.state(to) != CellState::Blocked && !self.edge_blocked(&Edge::side(from, h)))
            .then_some(to)
    }

    pub fn count(&self, class: &str, c: Cell) -> u32 {
        self.semantic.get(class).map_or(0, |g| g[self.idx(c)])
    }

    pub fn add_sighting(&mut self, class: &str, c: Cell) {
        let i = self.idx(c);
        let n = (self.width * self.height) as usize;
        self.semantic.entry(class.to_string()).or_insert_with(|| vec![0; n])[i] += 1;
    }

    pub fn clear_sightings(&mut self, class: &str, c: Cell) {
        let i = self.idx(c);
        if let Some(g) = self.semantic.get_mut(class) {
            g[i] = 0;
        }
    }

    /// Cells with a positive count for `class`, row-major.
    pub fn sightings(&self, class: &str) -> Vec<Cell> {
        self.cells().filter(|c| self.count(class, *c) > 0).collect()
    }

    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.semantic.iter().filter(|(_, g)| g.iter().any(|n| *n > 0)).map(|(k, _)| k.as_str())
    }
}

fn register_ray(
    map: &mut SemanticMap,
    pose: &AgentPose,
    bearing: f64,
    range: f64,
    wall: bool,
    source: EdgeSource,
    learned: &mut Vec<(Edge, EdgeSource)>,
) {
    let (segments, ends) = walk_straight(map.width, map.height, ray_origin(pose), ray_direction(pose, bearing), range);
    for s in segments.iter().filter(|s| s.len() > RANGE_EPS) {
        map.mark_free(s.cell);
    }
    // several edges at once means the reading ended on a vertex
    if wall && ends.len() == 1 && map.block_edge(ends[0]) {
        learned.push((ends[0], source));
    }
}

/// Folds one observation into the map. Returns the edges learned.
pub fn update_map(
    map: &mut SemanticMap,
    obs: &ObservationBundle,
    pose: &AgentPose,
    profile: &AgentProfile,
) -> Vec<(Edge, EdgeSource)> {
    let cfg = &profile.cfg;
    let mut learned = Vec::new();
    map.mark_free(pose.cell);
    if obs.bump {
        let e = Edge::side(pose.cell, pose.heading);
        if map.block_edge(e) {
            learned.push((e, EdgeSource::Bump));
        }
    }
    let bearings = cfg.bearings();
    for (b, ray) in bearings.iter().zip(&obs.vision_rays) {
        register_ray(map, pose, *b, ray.free_range, ray.wall_seen, EdgeSource::Vision, &mut learned);
    }
    let ranges = match profile.kind {
        AgentKind::VisionOnly => None,
        AgentKind::MapDepth => Some((&obs.depth[..], EdgeSource::Depth)),
        AgentKind::MapGtDepth => obs.gt_depth.as_deref().map(|g| (g, EdgeSource::GtDepth)),
    };
    if let Some((ranges, source)) = ranges {
        for (b, r) in bearings.iter().zip(ranges) {
            register_ray(map, pose, *b, *r, *r < cfg.max_range - RANGE_EPS, source, &mut learned);
        }
    }
    // depth sees through glass like vision does, so it vetoes only
    // detections lying beyond a surface vision should not have passed
    let veto = (profile.kind != AgentKind::VisionOnly && !obs.depth.is_empty()).then_some(&obs.depth);
    for d in &obs.vision {
        if let Some(depth) = veto {
            if d.apparent_range > depth[cfg.ray_index(d.apparent_bearing)] + RANGE_EPS {
                continue;
            }
        }
        let c = d.apparent_cell(pose);
        if map.in_bounds(c) {
            map.add_sighting(&d.object_class, c);
        }
    }
    learned
}
