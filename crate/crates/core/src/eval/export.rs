//! Writing and reloading run outputs.
//!
//! Layout of an output directory:
//!
//! ```text
//! report.csv     one row per (profile, condition, task); task `*` is the group total
//! report.json    the full Report
//! logs/<task>__v<variant>__s<start>__<condition>__<profile>.json
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use super::episode::{EpisodeLog, LOG_SCHEMA_VERSION};
use super::report::{Rates, Report};
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 10] = [
    "profile",
    "condition",
    "task",
    "episodes",
    "successes",
    "success_rate",
    "subgoals_total",
    "subgoals_done",
    "gc_rate_micro",
    "gc_rate_macro",
];

pub fn log_file_name(log: &EpisodeLog) -> String {
    format!(
        "{}__v{}__s{}__{}__{}.json",
        log.task_id,
        log.variant,
        log.start_index,
        log.condition,
        log.profile.kind.name()
    )
}

fn rate_row(profile: &str, condition: &str, task: &str, r: &Rates) -> Vec<String> {
    vec![
        profile.to_string(),
        condition.to_string(),
        task.to_string(),
        r.episodes.to_string(),
        r.successes.to_string(),
        r.success_rate.to_string(),
        r.subgoals_total.to_string(),
        r.subgoals_done.to_string(),
        r.gc_rate_micro.to_string(),
        r.gc_rate_macro.to_string(),
    ]
}

/// Rows of the report table in (profile, condition, task) order.
pub fn report_rows(report: &Report) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for g in &report.groups {
        rows.push(rate_row(&g.profile, &g.condition, "*", &g.rates));
        for t in &g.tasks {
            rows.push(rate_row(&g.profile, &g.condition, &t.task, &t.rates));
        }
    }
    rows
}

pub fn report_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for row in report_rows(report) {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

/// Aligned plain-text table of the group totals.
pub fn report_table(report: &Report) -> String {
    let header: Vec<String> = CSV_COLUMNS.iter().filter(|c| **c != "task").map(|c| c.to_string()).collect();
    let mut rows = vec![header];
    for g in &report.groups {
        let mut r = rate_row(&g.profile, &g.condition, "", &g.rates);
        r.remove(2);
        rows.push(r);
    }
    let widths: Vec<usize> = (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn log_json(log: &EpisodeLog) -> String {
    let mut s = serde_json::to_string_pretty(log).expect("logs serialize");
    s.push('\n');
    s
}

/// Writes the report and one file per log under `dir`.
pub fn export(dir: &Path, report: &Report, logs: &[EpisodeLog]) -> Result<()> {
    let log_dir = dir.join("logs");
    fs::create_dir_all(&log_dir).map_err(|e| Error::io(&log_dir, e))?;
    write(&dir.join("report.csv"), &report_csv(report))?;
    let mut json = serde_json::to_string_pretty(report).expect("report serializes");
    json.push('\n');
    write(&dir.join("report.json"), &json)?;
    for l in logs {
        write(&log_dir.join(log_file_name(l)), &log_json(l))?;
    }
    Ok(())
}

pub fn load_log(path: &Path) -> Result<EpisodeLog> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let log: EpisodeLog = serde_json::from_str(&text).map_err(|e| Error::Log {
        path: path.to_path_buf(),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    if log.schema_version != LOG_SCHEMA_VERSION {
        return Err(Error::Log {
            path: path.to_path_buf(),
            message: format!("schema_version {} (expected {LOG_SCHEMA_VERSION})", log.schema_version),
        });
    }
    Ok(log)
}

/// Loads every `*.json` log in `dir` (or in `dir/logs` when present),
/// ordered by file name.
pub fn load_logs(dir: &Path) -> Result<Vec<EpisodeLog>> {
    let nested = dir.join("logs");
    let dir = if nested.is_dir() { nested } else { dir.to_path_buf() };
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| Error::io(&dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(&dir, err)))
        .collect::<Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths.iter().map(|p| load_log(p)).collect()
}
