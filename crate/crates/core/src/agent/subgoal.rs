//! Template expansion of goals into subgoal sequences.
//!
//! | goal list                               | subgoals |
//! |-----------------------------------------|----------|
//! | `objectin c k`                          | Find c, GoTo c, Pickup c, GoTo k, PlaceIn k |
//! | `state c heated` + `objectin c k`       | Find c, GoTo c, Pickup c, Find Microwave, GoTo Microwave, Heat c, Find k, GoTo k, PlaceIn k |
//! | `state c heated`                        | the first six of the row above |
//! | `twoin c k`                             | the `objectin` row, twice |
//! | `examined c`                            | Find c, GoTo c, Pickup c, Find Lamp, GoTo Lamp, Examine c |
//! | empty                                   | nothing |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scene::ApplianceKind;
use crate::task::{GoalCondition, StateFlag, TaskSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "target")]
pub enum Subgoal {
    Find(String),
    /// Stand in the cell of an instance of the class or appliance kind.
    GoTo(String),
    Pickup(String),
    PlaceIn(ApplianceKind),
    Heat(String),
    Examine(String),
}

impl fmt::Display for Subgoal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgoal::Find(c) => write!(f, "Find({c})"),
            Subgoal::GoTo(c) => write!(f, "GoTo({c})"),
            Subgoal::Pickup(c) => write!(f, "Pickup({c})"),
            Subgoal::PlaceIn(k) => write!(f, "PlaceIn({k})"),
            Subgoal::Heat(c) => write!(f, "Heat({c})"),
            Subgoal::Examine(c) => write!(f, "Examine({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgoalPlan {
    pub subgoals: Vec<Subgoal>,
    pub cursor: usize,
}

impl SubgoalPlan {
    pub fn new(subgoals: Vec<Subgoal>) -> Self {
        SubgoalPlan { subgoals, cursor: 0 }
    }

    pub fn len(&self) -> usize {
        self.subgoals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgoals.is_empty()
    }

    pub fn current(&self) -> Option<&Subgoal> {
        self.subgoals.get(self.cursor)
    }

    pub fn advance(&mut self) {
        self.cursor = (self.cursor + 1).min(self.subgoals.len());
    }

    /// Moves the cursor back to the nearest GoTo at or before it.
    pub fn rewind_to_goto(&mut self) {
        if let Some(i) =
            self.subgoals[..self.cursor.min(self.subgoals.len())].iter().rposition(|s| matches!(s, Subgoal::GoTo(_)))
        {
            self.cursor = i;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no subgoal template for goal [{0}]")]
pub struct UnknownGoalKind(pub String);

fn pick_and_place(class: &str, kind: ApplianceKind) -> Vec<Subgoal> {
    vec![
        Subgoal::Find(class.into()),
        Subgoal::GoTo(class.into()),
        Subgoal::Pickup(class.into()),
        Subgoal::GoTo(kind.name().into()),
        Subgoal::PlaceIn(kind),
    ]
}

fn fetch_and_visit(class: &str, station: ApplianceKind, last: Subgoal) -> Vec<Subgoal> {
    vec![
        Subgoal::Find(class.into()),
        Subgoal::GoTo(class.into()),
        Subgoal::Pickup(class.into()),
        Subgoal::Find(station.name().into()),
        Subgoal::GoTo(station.name().into()),
        last,
    ]
}

pub fn decompose(task: &TaskSpec) -> Result<SubgoalPlan, UnknownGoalKind> {
    decompose_goal(&task.goal)
}

pub fn decompose_goal(goal: &[GoalCondition]) -> Result<SubgoalPlan, UnknownGoalKind> {
    use GoalCondition::*;
    let heated = |c: &String| ObjectState { class: c.clone(), flag: StateFlag::Heated };
    let subgoals = match goal {
        [] => vec![],
        [ObjectIn { class, container }] => pick_and_place(class, *container),
        [TwoObjectsIn { class, container }] => {
            let mut v = pick_and_place(class, *container);
            v.extend(pick_and_place(class, *container));
            v
        }
        [ObjectState { class, flag: StateFlag::Heated }] => {
            fetch_and_visit(class, ApplianceKind::Microwave, Subgoal::Heat(class.clone()))
        }
        [a @ ObjectState { .. }, ObjectIn { class, container }]
        | [ObjectIn { class, container }, a @ ObjectState { .. }]
            if *a == heated(class) =>
        {
            let mut v = fetch_and_visit(class, ApplianceKind::Microwave, Subgoal::Heat(class.clone()));
            v.extend([
                Subgoal::Find(container.name().into()),
                Subgoal::GoTo(container.name().into()),
                Subgoal::PlaceIn(*container),
            ]);
            v
        }
        [ExaminedInLight { class }] => fetch_and_visit(class, ApplianceKind::Lamp, Subgoal::Examine(class.clone())),
        other => {
            let text: Vec<String> = other.iter().map(|g| g.to_string()).collect();
            return Err(UnknownGoalKind(text.join(", ")));
        }
    };
    Ok(SubgoalPlan::new(subgoals))
}
