//! The discrete household world and its text format.
//!
//! ```text
//! size 10 10
//! light 1
//! wall 4 6 5 6 opaque
//! object plate_1 Plate 6 8 heated
//! object mug_1 Mug - - held
//! appliance mw_1 Microwave 1 0 closed off
//! ```
//!
//! Walls sit on cell edges, named by the two cells they separate. The
//! perimeter is implicitly opaque and never written. [`Scene::to_text`]
//! emits the canonical form: walls in row-major edge order, objects and
//! appliances in stored order, lowercase keywords, shortest float digits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::grid::{Cell, Edge, Heading, Material, NotAdjacent};
use crate::text;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub width: u32,
    pub height: u32,
    pub light_level: f64,
    pub walls: BTreeMap<Edge, Material>,
    pub objects: Vec<ObjectInstance>,
    pub appliances: Vec<Appliance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWall {
    pub edge: Edge,
    pub material: Material,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectInstance {
    pub id: String,
    pub class: String,
    /// `None` while the object is held by the agent.
    pub cell: Option<Cell>,
    pub state: ObjectState,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectState {
    pub heated: bool,
    pub cleaned: bool,
    pub cooled: bool,
    pub examined: bool,
    pub held: bool,
    pub inside: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ApplianceKind {
    Microwave,
    Sink,
    Fridge,
    Lamp,
    CounterTop,
}

impl ApplianceKind {
    pub const ALL: [ApplianceKind; 5] = [
        ApplianceKind::Microwave,
        ApplianceKind::Sink,
        ApplianceKind::Fridge,
        ApplianceKind::Lamp,
        ApplianceKind::CounterTop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ApplianceKind::Microwave => "Microwave",
            ApplianceKind::Sink => "Sink",
            ApplianceKind::Fridge => "Fridge",
            ApplianceKind::Lamp => "Lamp",
            ApplianceKind::CounterTop => "CounterTop",
        }
    }

    pub fn parse(s: &str) -> Option<ApplianceKind> {
        ApplianceKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn openable(self) -> bool {
        matches!(self, ApplianceKind::Microwave | ApplianceKind::Fridge)
    }

    pub fn toggleable(self) -> bool {
        matches!(self, ApplianceKind::Microwave | ApplianceKind::Lamp)
    }

    /// Whether objects can be put into / onto it.
    pub fn receptacle(self) -> bool {
        !matches!(self, ApplianceKind::Lamp)
    }
}

impl fmt::Display for ApplianceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Appliance {
    pub id: String,
    pub kind: ApplianceKind,
    pub cell: Cell,
    pub is_open: Option<bool>,
    pub is_on: Option<bool>,
}

impl Appliance {
    /// Appliance with the flags its kind supports, closed and off.
    pub fn new(id: impl Into<String>, kind: ApplianceKind, cell: Cell) -> Self {
        Appliance {
            id: id.into(),
            kind,
            cell,
            is_open: kind.openable().then_some(false),
            is_on: kind.toggleable().then_some(false),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AgentPose {
    pub cell: Cell,
    pub heading: Heading,
}

impl AgentPose {
    pub const fn new(x: i32, y: i32, heading: Heading) -> Self {
        AgentPose { cell: Cell::new(x, y), heading }
    }

    pub fn faced(&self) -> Cell {
        self.cell.step(self.heading)
    }
}

impl fmt::Display for AgentPose {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.cell.x, self.cell.y, self.heading)
    }
}

/// A broken scene or disturbance invariant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    EmptyGrid,
    LightOutOfRange(f64),
    DuplicateId(String),
    EdgeOutOfBounds(Edge),
    ObjectOutOfBounds(String),
    ObjectEnclosed(String),
    HeldPlacement(String),
    UnknownReceptacle { object: String, receptacle: String },
    ReceptacleCellMismatch(String),
    ApplianceOutOfBounds(String),
    UnsupportedFlag { appliance: String, flag: String },
    EmptyEdgeList,
    VariantCount(usize),
    StartCount(usize),
    StartPosition(String),
    UnknownClass(String),
}

impl Violation {
    /// Stable name of the broken invariant.
    pub fn invariant(&self) -> &'static str {
        match self {
            Violation::EmptyGrid => "GridSize",
            Violation::LightOutOfRange(_) => "LightOutOfRange",
            Violation::DuplicateId(_) => "DuplicateId",
            Violation::EdgeOutOfBounds(_) => "EdgeOutOfBounds",
            Violation::ObjectOutOfBounds(_) => "ObjectOutOfBounds",
            Violation::ObjectEnclosed(_) => "ObjectEnclosed",
            Violation::HeldPlacement(_) => "HeldPlacement",
            Violation::UnknownReceptacle { .. } => "UnknownReceptacle",
            Violation::ReceptacleCellMismatch(_) => "ReceptacleCell",
            Violation::ApplianceOutOfBounds(_) => "ApplianceOutOfBounds",
            Violation::UnsupportedFlag { .. } => "ApplianceFlag",
            Violation::EmptyEdgeList => "EmptyEdgeList",
            Violation::VariantCount(_) => "VariantCount",
            Violation::StartCount(_) => "StartCount",
            Violation::StartPosition(_) => "StartPosition",
            Violation::UnknownClass(_) => "UnknownClass",
        }
    }

    /// Id of the offending entity, when there is one.
    pub fn entity(&self) -> Option<String> {
        match self {
            Violation::DuplicateId(id)
            | Violation::ObjectOutOfBounds(id)
            | Violation::ObjectEnclosed(id)
            | Violation::HeldPlacement(id)
            | Violation::ReceptacleCellMismatch(id)
            | Violation::ApplianceOutOfBounds(id)
            | Violation::StartPosition(id)
            | Violation::UnknownClass(id) => Some(id.clone()),
            Violation::VariantCount(n) | Violation::StartCount(n) => Some(n.to_string()),
            Violation::UnknownReceptacle { object, .. } => Some(object.clone()),
            Violation::UnsupportedFlag { appliance, .. } => Some(appliance.clone()),
            Violation::EdgeOutOfBounds(e) => Some(format!("edge {e}")),
            Violation::EmptyGrid | Violation::LightOutOfRange(_) | Violation::EmptyEdgeList => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LightOutOfRange(l) => write!(f, "LightOutOfRange: {l} not in [0, 1]"),
            Violation::UnknownReceptacle { object, receptacle } => {
                write!(f, "UnknownReceptacle: {object} is inside unknown `{receptacle}`")
            }
            Violation::UnsupportedFlag { appliance, flag } => {
                write!(f, "ApplianceFlag: {appliance} cannot carry `{flag}`")
            }
            other => match other.entity() {
                Some(e) => write!(f, "{}: {e}", other.invariant()),
                None => f.write_str(other.invariant()),
            },
        }
    }
}

impl Scene {
    /// Empty, fully lit scene.
    pub fn empty(width: u32, height: u32) -> Scene {
        Scene { width, height, light_level: 1.0, walls: BTreeMap::new(), objects: Vec::new(), appliances: Vec::new() }
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as i64) < self.width as i64 && (c.y as i64) < self.height as i64
    }

    /// Every cell, row-major.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height as i32).flat_map(move |y| (0..self.width as i32).map(move |x| Cell::new(x, y)))
    }

    pub fn is_boundary(&self, e: &Edge) -> bool {
        let (a, b) = e.cells();
        self.in_bounds(a) != self.in_bounds(b)
    }

    /// Material blocking `edge`, including the implicit opaque perimeter.
    pub fn wall(&self, edge: &Edge) -> Option<Material> {
        if let Some(m) = self.walls.get(edge) {
            return Some(*m);
        }
        let (a, b) = edge.cells();
        if !self.in_bounds(a) || !self.in_bounds(b) {
            return Some(Material::Opaque);
        }
        None
    }

    pub fn wall_on_side(&self, cell: Cell, heading: Heading) -> Option<Material> {
        self.wall(&Edge::side(cell, heading))
    }

    pub fn object(&self, id: &str) -> Option<&ObjectInstance> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn object_mut(&mut self, id: &str) -> Option<&mut ObjectInstance> {
        self.objects.iter_mut().find(|o| o.id == id)
    }

    pub fn appliance(&self, id: &str) -> Option<&Appliance> {
        self.appliances.iter().find(|a| a.id == id)
    }

    pub fn appliance_mut(&mut self, id: &str) -> Option<&mut Appliance> {
        self.appliances.iter_mut().find(|a| a.id == id)
    }

    /// Kind of the receptacle with this id, when it is an appliance.
    pub fn receptacle_kind(&self, id: &str) -> Option<ApplianceKind> {
        self.appliance(id).map(|a| a.kind)
    }

    /// Object class names and appliance kind names present in the scene.
    pub fn class_registry(&self) -> BTreeSet<String> {
        self.objects
            .iter()
            .map(|o| o.class.clone())
            .chain(self.appliances.iter().map(|a| a.kind.name().to_string()))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Scene, ParseError> {
        parse_scene(text)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_scene(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("size {} {}\n", self.width, self.height));
        out.push_str(&format!("light {}\n", self.light_level));
        for (edge, m) in &self.walls {
            out.push_str(&format!("wall {edge} {m}\n"));
        }
        for o in &self.objects {
            match o.cell {
                Some(c) => out.push_str(&format!("object {} {} {} {}", o.id, o.class, c.x, c.y)),
                None => out.push_str(&format!("object {} {} - -", o.id, o.class)),
            }
            let s = &o.state;
            for (on, name) in [
                (s.heated, "heated"),
                (s.cleaned, "cleaned"),
                (s.cooled, "cooled"),
                (s.examined, "examined"),
                (s.held, "held"),
            ] {
                if on {
                    out.push(' ');
                    out.push_str(name);
                }
            }
            if let Some(r) = &s.inside {
                out.push_str(&format!(" in={r}"));
            }
            out.push('\n');
        }
        for a in &self.appliances {
            out.push_str(&format!("appliance {} {} {} {}", a.id, a.kind, a.cell.x, a.cell.y));
            if let Some(open) = a.is_open {
                out.push_str(if open { " open" } else { " closed" });
            }
            if let Some(on) = a.is_on {
                out.push_str(if on { " on" } else { " off" });
            }
            out.push('\n');
        }
        out
    }
}

/// Wall on the edge between `a` and `b`; the perimeter reports `Opaque`.
pub fn edge_between(a: Cell, b: Cell, scene: &Scene) -> Result<Option<EdgeWall>, NotAdjacent> {
    let edge = Edge::new(a, b)?;
    Ok(scene.wall(&edge).map(|material| EdgeWall { edge, material }))
}

pub fn validate_scene(scene: &Scene) -> Vec<Violation> {
    let mut out = Vec::new();
    if scene.width == 0 || scene.height == 0 {
        out.push(Violation::EmptyGrid);
    }
    if !(0.0..=1.0).contains(&scene.light_level) {
        out.push(Violation::LightOutOfRange(scene.light_level));
    }
    for edge in scene.walls.keys() {
        let (a, b) = edge.cells();
        if !scene.in_bounds(a) && !scene.in_bounds(b) {
            out.push(Violation::EdgeOutOfBounds(*edge));
        }
    }
    let mut seen = BTreeSet::new();
    for id in scene.objects.iter().map(|o| &o.id).chain(scene.appliances.iter().map(|a| &a.id)) {
        if !seen.insert(id.as_str()) {
            out.push(Violation::DuplicateId(id.clone()));
        }
    }
    for a in &scene.appliances {
        if !scene.in_bounds(a.cell) {
            out.push(Violation::ApplianceOutOfBounds(a.id.clone()));
        }
        if a.is_open.is_some() && !a.kind.openable() {
            out.push(Violation::UnsupportedFlag { appliance: a.id.clone(), flag: "open".into() });
        }
        if a.is_on.is_some() && !a.kind.toggleable() {
            out.push(Violation::UnsupportedFlag { appliance: a.id.clone(), flag: "on".into() });
        }
    }
    for o in &scene.objects {
        if o.state.held != o.cell.is_none() {
            out.push(Violation::HeldPlacement(o.id.clone()));
        }
        let receptacle = o.state.inside.as_deref().map(|r| {
            let cell = scene
                .appliance(r)
                .map(|a| (a.cell, a.is_open == Some(false)))
                .or_else(|| scene.object(r).and_then(|x| x.cell.map(|c| (c, false))));
            (r, cell)
        });
        if let Some((r, None)) = receptacle {
            out.push(Violation::UnknownReceptacle { object: o.id.clone(), receptacle: r.to_string() });
        }
        if o.state.held && o.state.inside.is_some() {
            out.push(Violation::HeldPlacement(o.id.clone()));
        }
        let Some(cell) = o.cell else { continue };
        if !scene.in_bounds(cell) {
            out.push(Violation::ObjectOutOfBounds(o.id.clone()));
            continue;
        }
        if let Some((_, Some((rcell, _)))) = receptacle {
            if rcell != cell {
                out.push(Violation::ReceptacleCellMismatch(o.id.clone()));
            }
        }
        let in_closed = matches!(receptacle, Some((_, Some((_, true)))));
        let enclosed = Heading::ALL.iter().all(|h| scene.wall_on_side(cell, *h) == Some(Material::Opaque));
        if enclosed && !in_closed {
            out.push(Violation::ObjectEnclosed(o.id.clone()));
        }
    }
    out
}

pub fn parse_scene(text: &str) -> Result<Scene, ParseError> {
    let mut size: Option<(u32, u32)> = None;
    let mut light: Option<f64> = None;
    let mut walls = BTreeMap::new();
    let mut objects = Vec::new();
    let mut appliances = Vec::new();
    // entity id / edge text -> line, so semantic failures point somewhere useful
    let mut origin: BTreeMap<String, usize> = BTreeMap::new();
    // line of the second declaration of a reused id
    let mut repeat: BTreeMap<String, usize> = BTreeMap::new();

    for line in text::lines(text)? {
        match line.keyword() {
            "size" => {
                line.expect_arity(2, 2)?;
                if size.is_some() {
                    return Err(ParseError::syntax(line.number, 1, "duplicate `size`"));
                }
                let (w, h) = (line.int(0)?, line.int(1)?);
                if w < 1 || h < 1 {
                    return Err(ParseError::semantic(
                        line.number,
                        line.args()[0].column,
                        "GridSize",
                        "width and height must be at least 1",
                    ));
                }
                size = Some((w as u32, h as u32));
            }
            "light" => {
                line.expect_arity(1, 1)?;
                if light.is_some() {
                    return Err(ParseError::syntax(line.number, 1, "duplicate `light`"));
                }
                light = Some(line.number(0)?);
                origin.insert("light".into(), line.number);
            }
            "wall" => {
                line.expect_arity(5, 5)?;
                let a = Cell::new(line.int(0)?, line.int(1)?);
                let b = Cell::new(line.int(2)?, line.int(3)?);
                let edge = Edge::new(a, b).map_err(|e| {
                    ParseError::semantic(line.number, line.args()[0].column, "EdgeAdjacency", e.to_string())
                })?;
                let m = Material::parse(line.args()[4].text)
                    .ok_or_else(|| line.error_at(4, "expected opaque, glass or mirror"))?;
                if walls.insert(edge, m).is_some() {
                    return Err(ParseError::semantic(
                        line.number,
                        1,
                        "DuplicateEdge",
                        format!("edge {edge} declared twice"),
                    ));
                }
                origin.insert(format!("edge {edge}"), line.number);
            }
            "object" => {
                line.expect_arity(4, 10)?;
                let id = line.args()[0].text.to_string();
                let class = line.args()[1].text.to_string();
                let mut state = ObjectState::default();
                let cell = if line.args()[2].text == "-" && line.args()[3].text == "-" {
                    None
                } else {
                    Some(Cell::new(line.int(2)?, line.int(3)?))
                };
                for (i, t) in line.args().iter().enumerate().skip(4) {
                    match t.text {
                        "heated" => state.heated = true,
                        "cleaned" => state.cleaned = true,
                        "cooled" => state.cooled = true,
                        "examined" => state.examined = true,
                        "held" => state.held = true,
                        s if s.starts_with("in=") && s.len() > 3 => state.inside = Some(s[3..].to_string()),
                        _ => return Err(line.error_at(i, format!("unknown object state `{}`", t.text))),
                    }
                }
                if cell.is_none() && !state.held {
                    return Err(line.error_at(2, "only held objects may omit their cell"));
                }
                if origin.contains_key(&id) {
                    repeat.entry(id.clone()).or_insert(line.number);
                }
                origin.entry(id.clone()).or_insert(line.number);
                objects.push(ObjectInstance { id, class, cell, state });
            }
            "appliance" => {
                line.expect_arity(4, 6)?;
                let id = line.args()[0].text.to_string();
                let kind = ApplianceKind::parse(line.args()[1].text)
                    .ok_or_else(|| line.error_at(1, "expected Microwave, Sink, Fridge, Lamp or CounterTop"))?;
                let cell = Cell::new(line.int(2)?, line.int(3)?);
                let mut app = Appliance::new(id.clone(), kind, cell);
                for (i, t) in line.args().iter().enumerate().skip(4) {
                    match t.text {
                        "open" | "closed" if kind.openable() => app.is_open = Some(t.text == "open"),
                        "on" | "off" if kind.toggleable() => app.is_on = Some(t.text == "on"),
                        "open" | "closed" | "on" | "off" => {
                            return Err(ParseError::semantic(
                                line.number,
                                t.column,
                                "ApplianceFlag",
                                format!("{kind} cannot be `{}`", t.text),
                            ))
                        }
                        _ => return Err(line.error_at(i, format!("unknown appliance flag `{}`", t.text))),
                    }
                }
                if origin.contains_key(&id) {
                    repeat.entry(id.clone()).or_insert(line.number);
                }
                origin.entry(id).or_insert(line.number);
                appliances.push(app);
            }
            other => return Err(ParseError::syntax(line.number, 1, format!("unknown directive `{other}`"))),
        }
    }

    let Some((width, height)) = size else {
        return Err(ParseError::syntax(1, 1, "missing `size` directive"));
    };
    let scene = Scene { width, height, light_level: light.unwrap_or(1.0), walls, objects, appliances };
    if let Some(v) = validate_scene(&scene).into_iter().next() {
        let line = match &v {
            Violation::LightOutOfRange(_) => origin.get("light").copied(),
            Violation::DuplicateId(id) => repeat.get(id).copied(),
            other => other.entity().and_then(|k| origin.get(&k).copied()),
        }
        .unwrap_or(0);
        return Err(ParseError::semantic(line, 1, v.invariant(), v.to_string()));
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KITCHEN_MINI: &str = "\
size 10 10
light 1
wall 4 6 5 6 opaque
wall 2 4 2 5 glass
object plate_1 Plate 6 8
appliance mw_1 Microwave 1 0
appliance sink_1 Sink 5 0
";

    #[test]
    fn minimal_scene() {
        let s = parse_scene("size 1 1\nlight 1.0\n").unwrap();
        assert_eq!((s.width, s.height), (1, 1));
        assert!(s.walls.is_empty());
        assert_eq!(s.light_level, 1.0);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn non_adjacent_wall_rejected() {
        let err = parse_scene("size 3 3\nwall 0 0 2 0 opaque\n").unwrap_err();
        assert_eq!(err.invariant(), Some("EdgeAdjacency"));
        assert_eq!(err.line, 2);
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_scene("size 3 3\nobject a Plate x 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 16));
        assert!(err.invariant().is_none());
    }

    #[test]
    fn duplicate_ids_reported() {
        let mut s = parse_scene(KITCHEN_MINI).unwrap();
        let mut dup = s.objects[0].clone();
        dup.cell = Some(Cell::new(1, 1));
        s.objects.push(dup);
        assert_eq!(validate_scene(&s), vec![Violation::DuplicateId("plate_1".into())]);
    }

    #[test]
    fn light_out_of_range() {
        let mut s = Scene::empty(2, 2);
        s.light_level = 1.5;
        assert_eq!(validate_scene(&s), vec![Violation::LightOutOfRange(1.5)]);
        let err = parse_scene("size 2 2\nlight 1.5\n").unwrap_err();
        assert_eq!((err.invariant(), err.line), (Some("LightOutOfRange"), 2));
    }

    #[test]
    fn flags_by_kind() {
        let err = parse_scene("size 2 2\nappliance s Sink 0 0 open\n").unwrap_err();
        assert_eq!(err.invariant(), Some("ApplianceFlag"));
        let s = parse_scene("size 2 2\nappliance l Lamp 0 0\n").unwrap();
        assert_eq!(s.appliances[0].is_on, Some(false));
        assert_eq!(s.appliances[0].is_open, None);
    }

    #[test]
    fn enclosed_object() {
        let text = "size 3 3\nwall 1 1 1 0 opaque\nwall 1 1 0 1 opaque\nwall 1 1 2 1 opaque\nwall 1 1 1 2 opaque\nobject o Plate 1 1\n";
        let err = parse_scene(text).unwrap_err();
        assert_eq!(err.invariant(), Some("ObjectEnclosed"));
        assert_eq!(err.line, 6);
        // a closed microwave in the sealed cell makes it legal
        let ok = format!("{text}appliance mw Microwave 1 1 closed\n").replace("Plate 1 1", "Plate 1 1 in=mw");
        parse_scene(&ok).unwrap();
    }

    #[test]
    fn edge_queries() {
        let s = parse_scene(KITCHEN_MINI).unwrap();
        let a = Cell::new(2, 4);
        let b = Cell::new(2, 5);
        assert_eq!(edge_between(a, b, &s).unwrap().unwrap().material, Material::Glass);
        assert_eq!(edge_between(b, a, &s).unwrap(), edge_between(a, b, &s).unwrap());
        assert_eq!(edge_between(Cell::new(0, 0), Cell::new(1, 0), &s).unwrap(), None);
        let perimeter = edge_between(Cell::new(0, 0), Cell::new(-1, 0), &s).unwrap().unwrap();
        assert_eq!(perimeter.material, Material::Opaque);
        assert!(edge_between(Cell::new(0, 0), Cell::new(2, 0), &s).is_err());
    }

    #[test]
    fn canonical_text() {
        let s = parse_scene(KITCHEN_MINI).unwrap();
        let text = s.to_text();
        assert_eq!(
            text,
            "size 10 10\nlight 1\nwall 2 4 2 5 glass\nwall 4 6 5 6 opaque\nobject plate_1 Plate 6 8\n\
             appliance mw_1 Microwave 1 0 closed off\nappliance sink_1 Sink 5 0\n"
        );
        assert_eq!(parse_scene(&text).unwrap(), s);
    }

    #[test]
    fn held_objects_round_trip() {
        let s = parse_scene("size 2 2\nobject m Mug - - held heated\n").unwrap();
        assert_eq!(s.objects[0].cell, None);
        assert_eq!(parse_scene(&s.to_text()).unwrap(), s);
        assert!(parse_scene("size 2 2\nobject m Mug - -\n").is_err());
    }
}
