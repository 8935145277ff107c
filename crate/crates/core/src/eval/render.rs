//! Semantic map renders: ASCII and plain PGM.
//!
//! Both share a `(2W+1) × (2H+1)` layout where odd/odd positions are cells,
//! odd/even and even/odd positions are edges, and even/even are corners.
//!
//! ASCII legend: `?` unknown, `.` explored free, `X` blocked cell, `*`
//! trajectory, `@` agent, `|`/`-` blocked edges, `#` the outer wall, and
//! the first letter of the most-sighted class in a cell.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::agent::{CellState, SemanticMap};
use crate::grid::{Cell, Edge};
use crate::scene::AgentPose;

use super::episode::EpisodeLog;

/// What to draw.
#[derive(Clone, Debug)]
pub struct MapView<'a> {
    pub map: &'a SemanticMap,
    pub trajectory: &'a [Cell],
    pub agent: Option<AgentPose>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mark {
    Unknown,
    Free,
    BlockedCell,
    Trail,
    Agent,
    Class(char),
    Wall,
    Gap,
    Corner,
}

/// Glyph and the class names drawn with it.
type Legend = Vec<(char, Vec<String>)>;

fn layout(view: &MapView<'_>) -> (Vec<Vec<Mark>>, Legend) {
    let m = view.map;
    let (w, h) = (m.width as i32, m.height as i32);
    let trail: BTreeSet<Cell> = view.trajectory.iter().copied().collect();
    let mut grid = vec![vec![Mark::Gap; (2 * w + 1) as usize]; (2 * h + 1) as usize];
    let mut legend: Legend = Vec::new();
    let classes: Vec<&str> = m.classes().collect();
    for c in m.cells() {
        let glyph = classes
            .iter()
            .map(|k| (m.count(k, c), *k))
            .filter(|(n, _)| *n > 0)
            // most sightings, then alphabetical
            .min_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)))
            .map(|(_, k)| k);
        let mark = if view.agent.is_some_and(|p| p.cell == c) {
            Mark::Agent
        } else if let Some(k) = glyph {
            let g = k.chars().next().unwrap_or('?').to_ascii_uppercase();
            match legend.iter_mut().find(|(x, _)| *x == g) {
                Some((_, v)) if !v.iter().any(|s| s == k) => v.push(k.to_string()),
                Some(_) => {}
                None => legend.push((g, vec![k.to_string()])),
            }
            Mark::Class(g)
        } else if trail.contains(&c) {
            Mark::Trail
        } else {
            match m.state(c) {
                CellState::Unknown => Mark::Unknown,
                CellState::Free => Mark::Free,
                CellState::Blocked => Mark::BlockedCell,
            }
        };
        grid[(2 * c.y + 1) as usize][(2 * c.x + 1) as usize] = mark;
    }
    let edge_mark = |a: Cell, b: Cell| -> Mark {
        if !m.in_bounds(a) || !m.in_bounds(b) {
            return Mark::Wall;
        }
        if m.edge_blocked(&Edge::new(a, b).expect("adjacent")) {
            Mark::Wall
        } else {
            Mark::Gap
        }
    };
    for gy in 0..=2 * h {
        for gx in 0..=2 * w {
            let (ex, ey) = (gx % 2 == 0, gy % 2 == 0);
            let at = &mut grid[gy as usize][gx as usize];
            if ex && !ey {
                let y = (gy - 1) / 2;
                *at = edge_mark(Cell::new(gx / 2 - 1, y), Cell::new(gx / 2, y));
            } else if !ex && ey {
                let x = (gx - 1) / 2;
                *at = edge_mark(Cell::new(x, gy / 2 - 1), Cell::new(x, gy / 2));
            }
        }
    }
    // corners take the darkest neighbouring line
    for gy in (0..=2 * h).step_by(2) {
        for gx in (0..=2 * w).step_by(2) {
            let near = [(gx - 1, gy), (gx + 1, gy), (gx, gy - 1), (gx, gy + 1)];
            let walled = near.iter().any(|&(x, y)| {
                x >= 0 && y >= 0 && x <= 2 * w && y <= 2 * h && grid[y as usize][x as usize] == Mark::Wall
            });
            grid[gy as usize][gx as usize] = if walled { Mark::Corner } else { Mark::Gap };
        }
    }
    legend.sort();
    (grid, legend)
}

pub fn render_ascii(view: &MapView<'_>) -> String {
    let (grid, legend) = layout(view);
    let (w, h) = (view.map.width as usize, view.map.height as usize);
    let mut out = String::new();
    for (gy, row) in grid.iter().enumerate() {
        for (gx, mark) in row.iter().enumerate() {
            let perimeter = gx == 0 || gy == 0 || gx == 2 * w || gy == 2 * h;
            let ch = match mark {
                Mark::Unknown => '?',
                Mark::Free => '.',
                Mark::BlockedCell => 'X',
                Mark::Trail => '*',
                Mark::Agent => '@',
                Mark::Class(c) => *c,
                Mark::Wall | Mark::Corner if perimeter => '#',
                Mark::Wall if gx % 2 == 0 => '|',
                Mark::Wall => '-',
                Mark::Corner => '+',
                Mark::Gap => ' ',
            };
            out.push(ch);
        }
        out.push('\n');
    }
    for (g, classes) in legend {
        let _ = writeln!(out, "{g} {}", classes.join(" "));
    }
    out
}

/// Pixels per cell and per edge line.
pub const PGM_CELL: usize = 8;
pub const PGM_LINE: usize = 2;

fn gray(mark: Mark) -> u8 {
    match mark {
        Mark::Unknown => 128,
        Mark::Free => 235,
        Mark::BlockedCell => 60,
        Mark::Trail => 170,
        Mark::Agent => 255,
        Mark::Class(_) => 96,
        Mark::Wall | Mark::Corner => 0,
        Mark::Gap => 200,
    }
}

/// Plain (P2) portable graymap: dark obstacles, light explored floor.
pub fn render_pgm(view: &MapView<'_>) -> String {
    let (grid, _) = layout(view);
    let size = |i: usize| if i.is_multiple_of(2) { PGM_LINE } else { PGM_CELL };
    let width: usize = (0..grid[0].len()).map(size).sum();
    let height: usize = (0..grid.len()).map(size).sum();
    let mut out = format!("P2\n{width} {height}\n255\n");
    for (gy, row) in grid.iter().enumerate() {
        let line: Vec<String> =
            row.iter().enumerate().flat_map(|(gx, m)| std::iter::repeat_n(gray(*m).to_string(), size(gx))).collect();
        let line = line.join(" ");
        for _ in 0..size(gy) {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// ASCII and PGM renders of an episode's final map and path.
pub fn render_log(log: &EpisodeLog) -> (String, String) {
    let trajectory = log.trajectory();
    let view = MapView { map: &log.final_map, trajectory: &trajectory, agent: Some(log.final_pose()) };
    (render_ascii(&view), render_pgm(&view))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_map_all_unknown() {
        let m = SemanticMap::new(3, 2);
        let s = render_ascii(&MapView { map: &m, trajectory: &[], agent: None });
        assert_eq!(s, "#######\n#? ? ?#\n#     #\n#? ? ?#\n#######\n");
    }

    #[test]
    fn blocked_edge_and_glyph() {
        let mut m = SemanticMap::new(2, 1);
        m.mark_free(Cell::new(0, 0));
        m.block_edge(Edge::new(Cell::new(0, 0), Cell::new(1, 0)).unwrap());
        m.add_sighting("Bottle", Cell::new(1, 0));
        let s = render_ascii(&MapView { map: &m, trajectory: &[], agent: None });
        assert_eq!(s, "#####\n#.|B#\n#####\nB Bottle\n");
        let p = render_pgm(&MapView { map: &m, trajectory: &[], agent: None });
        assert!(p.starts_with("P2\n22 12\n255\n"));
    }
}
