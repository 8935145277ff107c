//! Path planning and frontier selection over a [`SemanticMap`].
//!
//! Unknown cells are treated as traversable. Expansion order is N, E, S, W
//! so equal-length paths always resolve the same way.

use std::collections::VecDeque;

use super::map::{CellState, SemanticMap};
use crate::grid::{Cell, Heading};
use crate::scene::AgentPose;

/// BFS distances from `from`; `u32::MAX` marks unreachable cells.
pub fn distances(map: &SemanticMap, from: Cell) -> Vec<u32> {
    let w = map.width as usize;
    let mut dist = vec![u32::MAX; w * map.height as usize];
    if !map.in_bounds(from) {
        return dist;
    }
    let at = |c: Cell| c.y as usize * w + c.x as usize;
    dist[at(from)] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        for h in Heading::ALL {
            if let Some(n) = map.passable(c, h) {
                if dist[at(n)] == u32::MAX {
                    dist[at(n)] = dist[at(c)] + 1;
                    queue.push_back(n);
                }
            }
        }
    }
    dist
}

/// Shortest 4-connected path, both endpoints included.
pub fn plan_path(map: &SemanticMap, from: Cell, to: Cell) -> Option<Vec<Cell>> {
    if !map.in_bounds(from) || !map.in_bounds(to) || map.state(to) == CellState::Blocked {
        return None;
    }
    let w = map.width as usize;
    let at = |c: Cell| c.y as usize * w + c.x as usize;
    let mut prev: Vec<Option<Cell>> = vec![None; w * map.height as usize];
    let mut seen = vec![false; prev.len()];
    seen[at(from)] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        if c == to {
            let mut path = vec![c];
            let mut cur = c;
            while let Some(p) = prev[at(cur)] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for h in Heading::ALL {
            if let Some(n) = map.passable(c, h) {
                if !seen[at(n)] {
                    seen[at(n)] = true;
                    prev[at(n)] = Some(c);
                    queue.push_back(n);
                }
            }
        }
    }
    None
}

/// Unknown cells bordering explored free space across an edge not known
/// to be blocked, row-major.
pub fn frontier_cells(map: &SemanticMap) -> Vec<Cell> {
    map.cells()
        .filter(|c| map.state(*c) == CellState::Unknown)
        .filter(|c| {
            Heading::ALL.iter().any(|h| {
                let f = c.step(*h);
                map.in_bounds(f)
                    && map.is_explored(f)
                    && map.state(f) == CellState::Free
                    && map.passable(f, h.left().left()) == Some(*c)
            })
        })
        .collect()
}

/// The frontier cell closest to the agent by planned path length, ties in
/// row-major order. The returned cell is the unexplored side of the
/// frontier, so walking onto it always reveals something new.
pub fn next_frontier(map: &SemanticMap, pose: &AgentPose) -> Option<Cell> {
    let dist = distances(map, pose.cell);
    let w = map.width as usize;
    frontier_cells(map)
        .into_iter()
        .map(|c| (dist[c.y as usize * w + c.x as usize], c))
        .filter(|(d, _)| *d != u32::MAX)
        .min()
        .map(|(_, c)| c)
}
