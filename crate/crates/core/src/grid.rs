//! Grid primitives shared by every other module: cells, headings, cell edges.
//!
//! Cells are unit squares; cell `(x, y)` covers `[x, x+1] × [y, y+1]`. `y`
//! grows southward, so `North` is `-y`. Cells order row-major (`y` first,
//! then `x`), which is the tie-break order used throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn step(self, heading: Heading) -> Cell {
        let (dx, dy) = heading.delta();
        Cell::new(self.x + dx, self.y + dy)
    }

    pub fn manhattan(self, other: Cell) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self.manhattan(other) == 1
    }

    pub fn center(self) -> Point {
        Point::new(self.x as f64 + 0.5, self.y as f64 + 0.5)
    }

    /// Neighbours in the fixed N, E, S, W order.
    pub fn neighbors(self) -> [Cell; 4] {
        Heading::ALL.map(|h| self.step(h))
    }

    /// Heading that moves from `self` to the adjacent cell `to`.
    pub fn heading_to(self, to: Cell) -> Option<Heading> {
        Heading::ALL.into_iter().find(|h| self.step(*h) == to)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heading {
    North,
    East,
    South,
    West,
}

impl Heading {
    pub const ALL: [Heading; 4] = [Heading::North, Heading::East, Heading::South, Heading::West];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Heading::North => (0, -1),
            Heading::East => (1, 0),
            Heading::South => (0, 1),
            Heading::West => (-1, 0),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Heading {
        Heading::ALL[i % 4]
    }

    pub fn right(self) -> Heading {
        Heading::from_index(self.index() + 1)
    }

    pub fn left(self) -> Heading {
        Heading::from_index(self.index() + 3)
    }

    /// Compass bearing in degrees, clockwise from north.
    pub fn degrees(self) -> f64 {
        90.0 * self.index() as f64
    }

    pub fn name(self) -> &'static str {
        match self {
            Heading::North => "north",
            Heading::East => "east",
            Heading::South => "south",
            Heading::West => "west",
        }
    }

    pub fn parse(s: &str) -> Option<Heading> {
        match s.to_ascii_lowercase().as_str() {
            "north" | "n" => Some(Heading::North),
            "east" | "e" => Some(Heading::East),
            "south" | "s" => Some(Heading::South),
            "west" | "w" => Some(Heading::West),
            _ => None,
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A continuous point in grid units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn offset(self, dir: Vec2, t: f64) -> Point {
        Point::new(self.x + dir.x * t, self.y + dir.y * t)
    }

    pub fn cell(self) -> Cell {
        Cell::new(self.x.floor() as i32, self.y.floor() as i32)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector for a compass bearing (degrees clockwise from north).
    pub fn from_bearing(degrees: f64) -> Vec2 {
        let r = degrees.to_radians();
        Vec2::new(r.sin(), -r.cos())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }
}

/// Orientation of the cell edge itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeAxis {
    /// Separates horizontally adjacent cells (a vertical line segment).
    Vertical,
    /// Separates vertically adjacent cells (a horizontal line segment).
    Horizontal,
}

/// The shared side of two 4-adjacent cells, stored in canonical order
/// (`a < b` row-major). One of the cells may lie outside the grid, which
/// is how boundary edges are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i32; 4]", into = "[i32; 4]")]
pub struct Edge {
    a: Cell,
    b: Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cells {0} and {1} are not 4-adjacent")]
pub struct NotAdjacent(pub Cell, pub Cell);

impl Edge {
    pub fn new(a: Cell, b: Cell) -> Result<Edge, NotAdjacent> {
        if !a.is_adjacent(b) {
            return Err(NotAdjacent(a, b));
        }
        Ok(if a < b { Edge { a, b } } else { Edge { a: b, b: a } })
    }

    /// Edge on the `heading` side of `cell`.
    pub fn side(cell: Cell, heading: Heading) -> Edge {
        Edge::new(cell, cell.step(heading)).expect("step yields an adjacent cell")
    }

    pub fn a(&self) -> Cell {
        self.a
    }

    pub fn b(&self) -> Cell {
        self.b
    }

    pub fn cells(&self) -> (Cell, Cell) {
        (self.a, self.b)
    }

    pub fn axis(&self) -> EdgeAxis {
        if self.a.y == self.b.y {
            EdgeAxis::Vertical
        } else {
            EdgeAxis::Horizontal
        }
    }

    pub fn touches(&self, cell: Cell) -> bool {
        self.a == cell || self.b == cell
    }

    /// End points of the edge segment in continuous coordinates.
    pub fn segment(&self) -> (Point, Point) {
        match self.axis() {
            EdgeAxis::Vertical => {
                let x = self.b.x as f64;
                (Point::new(x, self.a.y as f64), Point::new(x, self.a.y as f64 + 1.0))
            }
            EdgeAxis::Horizontal => {
                let y = self.b.y as f64;
                (Point::new(self.a.x as f64, y), Point::new(self.a.x as f64 + 1.0, y))
            }
        }
    }
}

impl TryFrom<[i32; 4]> for Edge {
    type Error = NotAdjacent;

    fn try_from(v: [i32; 4]) -> Result<Self, Self::Error> {
        Edge::new(Cell::new(v[0], v[1]), Cell::new(v[2], v[3]))
    }
}

impl From<Edge> for [i32; 4] {
    fn from(e: Edge) -> Self {
        [e.a.x, e.a.y, e.b.x, e.b.y]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a.x, self.a.y, self.b.x, self.b.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Material {
    Opaque,
    Glass,
    Mirror,
}

impl Material {
    pub fn name(self) -> &'static str {
        match self {
            Material::Opaque => "opaque",
            Material::Glass => "glass",
            Material::Mirror => "mirror",
        }
    }

    pub fn parse(s: &str) -> Option<Material> {
        match s.to_ascii_lowercase().as_str() {
            "opaque" => Some(Material::Opaque),
            "glass" => Some(Material::Glass),
            "mirror" => Some(Material::Mirror),
            _ => None,
        }
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
