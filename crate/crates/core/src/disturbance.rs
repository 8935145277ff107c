//! Static scene transforms that degrade particular sensing channels.
//!
//! Disturbance files use the scene file conventions, one disturbance per line:
//!
//! ```text
//! dimlight 0.1
//! glasswall 1 4 1 5  2 4 2 5
//! mirror 4 7 5 7
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::grid::{Cell, Edge, Material};
use crate::scene::{Scene, Violation};
use crate::text;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Disturbance {
    DimLight { level: f64 },
    GlassWall { edges: Vec<Edge> },
    MirrorWall { edges: Vec<Edge> },
}

impl Disturbance {
    pub fn glass(edges: impl IntoIterator<Item = Edge>) -> Self {
        Disturbance::GlassWall { edges: canonical(edges) }
    }

    pub fn mirror(edges: impl IntoIterator<Item = Edge>) -> Self {
        Disturbance::MirrorWall { edges: canonical(edges) }
    }

    pub fn edges(&self) -> &[Edge] {
        match self {
            Disturbance::DimLight { .. } => &[],
            Disturbance::GlassWall { edges } | Disturbance::MirrorWall { edges } => edges,
        }
    }

    pub fn to_line(&self) -> String {
        let (kw, edges) = match self {
            Disturbance::DimLight { level } => return format!("dimlight {level}"),
            Disturbance::GlassWall { edges } => ("glasswall", edges),
            Disturbance::MirrorWall { edges } => ("mirror", edges),
        };
        let mut s = kw.to_string();
        for e in edges {
            s.push_str(&format!(" {e}"));
        }
        s
    }
}

impl fmt::Display for Disturbance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

fn canonical(edges: impl IntoIterator<Item = Edge>) -> Vec<Edge> {
    let mut v: Vec<Edge> = edges.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Violations that would make [`apply`] invalid; empty when it may proceed.
pub fn validate(scene: &Scene, d: &Disturbance) -> Vec<Violation> {
    match d {
        Disturbance::DimLight { level } => {
            if (0.0..=1.0).contains(level) {
                vec![]
            } else {
                vec![Violation::LightOutOfRange(*level)]
            }
        }
        Disturbance::GlassWall { edges } | Disturbance::MirrorWall { edges } => {
            if edges.is_empty() {
                return vec![Violation::EmptyEdgeList];
            }
            edges
                .iter()
                .filter(|e| !(scene.in_bounds(e.a()) && scene.in_bounds(e.b())))
                .map(|e| Violation::EdgeOutOfBounds(*e))
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("disturbance #{index} ({disturbance}) is invalid: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct DisturbanceError {
    pub index: usize,
    pub disturbance: String,
    pub violations: Vec<Violation>,
}

/// Applies one disturbance to a copy of `scene`.
pub fn apply(scene: &Scene, d: &Disturbance) -> Result<Scene, DisturbanceError> {
    let violations = validate(scene, d);
    if !violations.is_empty() {
        return Err(DisturbanceError { index: 0, disturbance: d.to_line(), violations });
    }
    let mut out = scene.clone();
    match d {
        Disturbance::DimLight { level } => out.light_level = *level,
        Disturbance::GlassWall { edges } => {
            out.walls.extend(edges.iter().map(|e| (*e, Material::Glass)));
        }
        Disturbance::MirrorWall { edges } => {
            out.walls.extend(edges.iter().map(|e| (*e, Material::Mirror)));
        }
    }
    Ok(out)
}

/// Left fold of [`apply`]; the error carries the failing index.
pub fn compose(scene: &Scene, ds: &[Disturbance]) -> Result<Scene, DisturbanceError> {
    ds.iter().enumerate().try_fold(scene.clone(), |s, (i, d)| {
        apply(&s, d).map_err(|mut e| {
            e.index = i;
            e
        })
    })
}

pub fn parse_disturbances(text: &str) -> Result<Vec<Disturbance>, ParseError> {
    let mut out = Vec::new();
    for line in text::lines(text)? {
        let d = match line.keyword() {
            "dimlight" => {
                line.expect_arity(1, 1)?;
                Disturbance::DimLight { level: line.number(0)? }
            }
            kw @ ("glasswall" | "mirror") => {
                let n = line.args().len();
                if n == 0 || n % 4 != 0 {
                    return Err(ParseError::syntax(
                        line.number,
                        line.end_column(),
                        format!("`{kw}` expects groups of four coordinates (x1 y1 x2 y2)"),
                    ));
                }
                let mut edges = Vec::new();
                for g in 0..n / 4 {
                    let i = 4 * g;
                    let a = Cell::new(line.int(i)?, line.int(i + 1)?);
                    let b = Cell::new(line.int(i + 2)?, line.int(i + 3)?);
                    let e = Edge::new(a, b).map_err(|e| {
                        ParseError::semantic(line.number, line.args()[i].column, "EdgeAdjacency", e.to_string())
                    })?;
                    edges.push(e);
                }
                if kw == "glasswall" {
                    Disturbance::glass(edges)
                } else {
                    Disturbance::mirror(edges)
                }
            }
            other => return Err(ParseError::syntax(line.number, 1, format!("unknown disturbance `{other}`"))),
        };
        out.push(d);
    }
    Ok(out)
}

pub fn disturbances_to_text(ds: &[Disturbance]) -> String {
    ds.iter().map(|d| format!("{}\n", d.to_line())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::edge_between;

    fn e(x1: i32, y1: i32, x2: i32, y2: i32) -> Edge {
        Edge::new(Cell::new(x1, y1), Cell::new(x2, y2)).unwrap()
    }

    fn base() -> Scene {
        Scene::parse("size 5 5\nwall 1 1 2 1 opaque\nobject b Bottle 3 3\nappliance s Sink 0 0\n").unwrap()
    }

    #[test]
    fn dim_light_only_touches_light() {
        let s = base();
        let d = apply(&s, &Disturbance::DimLight { level: 0.0 }).unwrap();
        assert_eq!(d.light_level, 0.0);
        assert_eq!(Scene { light_level: 1.0, ..d.clone() }, s);
    }

    #[test]
    fn glass_on_open_edge() {
        let s = base();
        let g = apply(&s, &Disturbance::glass([e(2, 2, 2, 3)])).unwrap();
        let w = edge_between(Cell::new(2, 2), Cell::new(2, 3), &g).unwrap().unwrap();
        assert_eq!(w.material, Material::Glass);
        assert_eq!(s.walls.len(), 1, "input untouched");
    }

    #[test]
    fn mirror_overrides_opaque() {
        let s = base();
        let m = apply(&s, &Disturbance::mirror([e(1, 1, 2, 1)])).unwrap();
        assert_eq!(m.walls[&e(1, 1, 2, 1)], Material::Mirror);
    }

    #[test]
    fn dim_idempotent() {
        let s = base();
        let d = Disturbance::DimLight { level: 0.3 };
        let once = apply(&s, &d).unwrap();
        assert_eq!(apply(&once, &d).unwrap(), once);
    }

    #[test]
    fn validation() {
        let s = base();
        assert_eq!(validate(&s, &Disturbance::glass([e(4, 4, 5, 4)])), vec![Violation::EdgeOutOfBounds(e(4, 4, 5, 4))]);
        assert_eq!(validate(&s, &Disturbance::mirror([])), vec![Violation::EmptyEdgeList]);
        assert!(validate(&s, &Disturbance::DimLight { level: 0.5 }).is_empty());
    }

    #[test]
    fn compose_reports_index() {
        let s = base();
        assert_eq!(compose(&s, &[]).unwrap(), s);
        let ds = [Disturbance::DimLight { level: 0.2 }, Disturbance::mirror([])];
        assert_eq!(compose(&s, &ds).unwrap_err().index, 1);
        let ds = [Disturbance::DimLight { level: 0.2 }, Disturbance::glass([e(0, 0, 0, 1)])];
        let expect = apply(&apply(&s, &ds[0]).unwrap(), &ds[1]).unwrap();
        assert_eq!(compose(&s, &ds).unwrap(), expect);
    }

    #[test]
    fn file_format() {
        let ds = parse_disturbances("# demo\ndimlight 0.1\nglasswall 2 2 2 3 1 2 1 3\nmirror 0 0 1 0\n").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds[1].edges(), &[e(1, 2, 1, 3), e(2, 2, 2, 3)]);
        let text = disturbances_to_text(&ds);
        assert_eq!(parse_disturbances(&text).unwrap(), ds);
        assert!(parse_disturbances("mirror 0 0 1").is_err());
        let err = parse_disturbances("glasswall 0 0 2 0").unwrap_err();
        assert_eq!(err.invariant(), Some("EdgeAdjacency"));
        assert!(parse_disturbances("").unwrap().is_empty());
    }
}
