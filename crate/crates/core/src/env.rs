//! Environment transition: applies an agent action to the world state.
//!
//! Interactions reach the agent's own cell or the faced neighbour when no
//! wall separates them. Heating is the microwave protocol: put the object
//! in, switch on, switch off; switching off heats everything inside.
//! Closing a fridge cools what is inside it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, Heading};
use crate::scene::{AgentPose, ApplianceKind, Scene};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    MoveAhead,
    RotateLeft,
    RotateRight,
    Pickup(String),
    Put(ApplianceKind),
    Open(ApplianceKind),
    Close(ApplianceKind),
    ToggleOn(ApplianceKind),
    ToggleOff(ApplianceKind),
    Examine(String),
    Stop,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::MoveAhead => f.write_str("MoveAhead"),
            Action::RotateLeft => f.write_str("RotateLeft"),
            Action::RotateRight => f.write_str("RotateRight"),
            Action::Pickup(c) => write!(f, "Pickup({c})"),
            Action::Put(k) => write!(f, "Put({k})"),
            Action::Open(k) => write!(f, "Open({k})"),
            Action::Close(k) => write!(f, "Close({k})"),
            Action::ToggleOn(k) => write!(f, "ToggleOn({k})"),
            Action::ToggleOff(k) => write!(f, "ToggleOff({k})"),
            Action::Examine(c) => write!(f, "Examine({c})"),
            Action::Stop => f.write_str("Stop"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Effect {
    Moved { to: Cell },
    Rotated { heading: Heading },
    PickedUp { id: String, class: String },
    Placed { id: String, class: String, receptacle: String, receptacle_kind: ApplianceKind },
    Opened { id: String },
    Closed { id: String, cooled: Vec<String> },
    SwitchedOn { id: String },
    SwitchedOff { id: String, heated: Vec<String> },
    Examined { id: String, class: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionResult {
    pub success: bool,
    /// A MoveAhead was blocked by a wall or the perimeter.
    pub bump: bool,
    pub effect: Option<Effect>,
}

impl ActionResult {
    fn ok(effect: Option<Effect>) -> Self {
        ActionResult { success: true, bump: false, effect }
    }

    fn failed() -> Self {
        ActionResult { success: false, bump: false, effect: None }
    }
}

/// Mutable per-episode world state.
#[derive(Clone, Debug, PartialEq)]
pub struct World {
    pub scene: Scene,
    pub pose: AgentPose,
    pub held: Option<String>,
}

impl World {
    pub fn new(scene: Scene, pose: AgentPose) -> Self {
        let held = scene.objects.iter().find(|o| o.state.held).map(|o| o.id.clone());
        World { scene, pose, held }
    }

    /// Cells the agent can reach with its hands: its own, then the faced one.
    fn reach(&self) -> Vec<Cell> {
        let mut cells = vec![self.pose.cell];
        let faced = self.pose.faced();
        if self.scene.in_bounds(faced) && self.scene.wall_on_side(self.pose.cell, self.pose.heading).is_none() {
            cells.push(faced);
        }
        cells
    }

    fn appliance_in_reach(&self, kind: ApplianceKind) -> Option<usize> {
        self.reach().into_iter().find_map(|c| self.scene.appliances.iter().position(|a| a.kind == kind && a.cell == c))
    }

    pub fn execute(&mut self, action: &Action) -> ActionResult {
        match action {
            Action::MoveAhead => {
                let to = self.pose.faced();
                if self.scene.wall_on_side(self.pose.cell, self.pose.heading).is_some() {
                    return ActionResult { success: false, bump: true, effect: None };
                }
                self.pose.cell = to;
                ActionResult::ok(Some(Effect::Moved { to }))
            }
            Action::RotateLeft => {
                self.pose.heading = self.pose.heading.left();
                ActionResult::ok(Some(Effect::Rotated { heading: self.pose.heading }))
            }
            Action::RotateRight => {
                self.pose.heading = self.pose.heading.right();
                ActionResult::ok(Some(Effect::Rotated { heading: self.pose.heading }))
            }
            Action::Pickup(class) => {
                if self.held.is_some() {
                    return ActionResult::failed();
                }
                let reach = self.reach();
                let found = reach.iter().find_map(|c| {
                    let mut ids: Vec<&str> = self
                        .scene
                        .objects
                        .iter()
                        .filter(|o| &o.class == class && o.cell == Some(*c))
                        .map(|o| o.id.as_str())
                        .collect();
                    ids.sort();
                    ids.first().map(|s| s.to_string())
                });
                let Some(id) = found else { return ActionResult::failed() };
                let o = self.scene.object_mut(&id).expect("object exists");
                o.cell = None;
                o.state.held = true;
                o.state.inside = None;
                self.held = Some(id.clone());
                ActionResult::ok(Some(Effect::PickedUp { id, class: class.clone() }))
            }
            Action::Put(kind) => {
                let (Some(id), true) = (self.held.clone(), kind.receptacle()) else {
                    return ActionResult::failed();
                };
                let Some(ai) = self.appliance_in_reach(*kind) else { return ActionResult::failed() };
                let (rid, rcell) = {
                    let a = &self.scene.appliances[ai];
                    (a.id.clone(), a.cell)
                };
                let o = self.scene.object_mut(&id).expect("held object exists");
                o.cell = Some(rcell);
                o.state.held = false;
                o.state.inside = Some(rid.clone());
                let class = o.class.clone();
                self.held = None;
                ActionResult::ok(Some(Effect::Placed { id, class, receptacle: rid, receptacle_kind: *kind }))
            }
            Action::Open(kind) | Action::Close(kind) => {
                let open = matches!(action, Action::Open(_));
                let Some(ai) = self.appliance_in_reach(*kind) else { return ActionResult::failed() };
                let a = &mut self.scene.appliances[ai];
                if a.is_open != Some(!open) {
                    return ActionResult::failed();
                }
                a.is_open = Some(open);
                let id = a.id.clone();
                if open {
                    return ActionResult::ok(Some(Effect::Opened { id }));
                }
                let mut cooled = Vec::new();
                if *kind == ApplianceKind::Fridge {
                    for o in self.scene.objects.iter_mut().filter(|o| o.state.inside.as_deref() == Some(&id)) {
                        o.state.cooled = true;
                        o.state.heated = false;
                        cooled.push(o.id.clone());
                    }
                }
                ActionResult::ok(Some(Effect::Closed { id, cooled }))
            }
            Action::ToggleOn(kind) | Action::ToggleOff(kind) => {
                let on = matches!(action, Action::ToggleOn(_));
                let Some(ai) = self.appliance_in_reach(*kind) else { return ActionResult::failed() };
                let a = &mut self.scene.appliances[ai];
                if a.is_on != Some(!on) {
                    return ActionResult::failed();
                }
                a.is_on = Some(on);
                let id = a.id.clone();
                if on {
                    return ActionResult::ok(Some(Effect::SwitchedOn { id }));
                }
                let mut heated = Vec::new();
                if *kind == ApplianceKind::Microwave {
                    for o in self.scene.objects.iter_mut().filter(|o| o.state.inside.as_deref() == Some(&id)) {
                        o.state.heated = true;
                        o.state.cooled = false;
                        heated.push(o.id.clone());
                    }
                }
                ActionResult::ok(Some(Effect::SwitchedOff { id, heated }))
            }
            Action::Examine(class) => {
                let lit = self.reach().into_iter().any(|c| {
                    self.scene
                        .appliances
                        .iter()
                        .any(|a| a.kind == ApplianceKind::Lamp && a.cell == c && a.is_on == Some(true))
                });
                if !lit {
                    return ActionResult::failed();
                }
                let held = self.held.clone().filter(|id| self.scene.object(id).is_some_and(|o| &o.class == class));
                let target = held.or_else(|| {
                    let reach = self.reach();
                    self.scene
                        .objects
                        .iter()
                        .find(|o| &o.class == class && o.cell.is_some_and(|c| reach.contains(&c)))
                        .map(|o| o.id.clone())
                });
                let Some(id) = target else { return ActionResult::failed() };
                self.scene.object_mut(&id).expect("exists").state.examined = true;
                ActionResult::ok(Some(Effect::Examined { id, class: class.clone() }))
            }
            Action::Stop => ActionResult::ok(None),
        }
    }
}

/// Pure form of [`World::execute`]: returns the successor state.
pub fn execute_action(
    scene: &Scene,
    pose: AgentPose,
    held: Option<String>,
    action: &Action,
) -> (Scene, AgentPose, Option<String>, ActionResult) {
    let mut w = World { scene: scene.clone(), pose, held };
    let r = w.execute(action);
    (w.scene, w.pose, w.held, r)
}
