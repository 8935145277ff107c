//! Task Success and Goal Condition rates per (profile, condition).
//!
//! GC is reported both pooled over subgoals (micro) and as the mean of
//! per-episode fractions (macro). Rates are exact rationals rounded once,
//! half-up, to two decimals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::episode::{EpisodeLog, Outcome};
use crate::error::{Error, Result};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A percentage held as integer hundredths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Percent(pub u64);

impl Percent {
    /// `100 * num / den` rounded half-up; zero when `den` is zero.
    pub fn from_ratio(num: u128, den: u128) -> Percent {
        if den == 0 {
            return Percent(0);
        }
        Percent(((20_000 * num + den) / (2 * den)) as u64)
    }

    pub fn from_fraction(r: Ratio<u128>) -> Percent {
        Percent::from_ratio(*r.numer(), *r.denom())
    }

    pub fn hundredths(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Percent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        if !(0.0..=100.0).contains(&v) {
            return Err(serde::de::Error::custom(format!("percentage {v} out of range")));
        }
        Ok(Percent((v * 100.0).round() as u64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rates {
    pub episodes: u64,
    pub successes: u64,
    pub success_rate: Percent,
    pub subgoals_total: u64,
    pub subgoals_done: u64,
    pub gc_rate_micro: Percent,
    pub gc_rate_macro: Percent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRates {
    pub task: String,
    #[serde(flatten)]
    pub rates: Rates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub profile: String,
    pub condition: String,
    #[serde(flatten)]
    pub rates: Rates,
    pub tasks: Vec<TaskRates>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// Sorted by (profile, condition).
    pub groups: Vec<GroupReport>,
}

impl Report {
    pub fn group(&self, profile: &str, condition: &str) -> Option<&GroupReport> {
        self.groups.iter().find(|g| g.profile == profile && g.condition == condition)
    }
}

#[derive(Default)]
struct Tally {
    episodes: u64,
    successes: u64,
    total: u64,
    done: u64,
    macro_sum: Ratio<u128>,
}

impl Tally {
    fn add(&mut self, log: &EpisodeLog) {
        let total = log.plan.len() as u64;
        let done = log.subgoals_done() as u64;
        let success = log.outcome == Outcome::Success;
        self.episodes += 1;
        self.successes += success as u64;
        self.total += total;
        self.done += done;
        self.macro_sum +=
            if total == 0 { Ratio::from_integer(success as u128) } else { Ratio::new(done as u128, total as u128) };
    }

    fn rates(&self) -> Rates {
        let macro_mean = if self.episodes == 0 {
            Ratio::from_integer(0)
        } else {
            self.macro_sum / Ratio::from_integer(self.episodes as u128)
        };
        Rates {
            episodes: self.episodes,
            successes: self.successes,
            success_rate: Percent::from_ratio(self.successes as u128, self.episodes as u128),
            subgoals_total: self.total,
            subgoals_done: self.done,
            gc_rate_micro: Percent::from_ratio(self.done as u128, self.total as u128),
            gc_rate_macro: Percent::from_fraction(macro_mean),
        }
    }
}

/// Matrix coordinates of a log, for duplicate detection.
pub fn log_key(l: &EpisodeLog) -> (String, usize, usize, String, String) {
    (l.task_id.clone(), l.variant, l.start_index, l.condition.clone(), l.profile.kind.name().to_string())
}

pub fn aggregate(logs: &[EpisodeLog]) -> Result<Report> {
    let mut seen = BTreeSet::new();
    let mut groups: BTreeMap<(String, String), (Tally, BTreeMap<String, Tally>)> = BTreeMap::new();
    for l in logs {
        let key = log_key(l);
        if !seen.insert(key.clone()) {
            return Err(Error::DuplicateKey(format!(
                "task {} variant {} start {} condition {} profile {}",
                key.0, key.1, key.2, key.3, key.4
            )));
        }
        let g = groups.entry((key.4, key.3)).or_default();
        g.0.add(l);
        g.1.entry(l.task_id.clone()).or_default().add(l);
    }
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        groups: groups
            .into_iter()
            .map(|((profile, condition), (all, per_task))| GroupReport {
                profile,
                condition,
                rates: all.rates(),
                tasks: per_task.into_iter().map(|(task, t)| TaskRates { task, rates: t.rates() }).collect(),
            })
            .collect(),
    })
}
