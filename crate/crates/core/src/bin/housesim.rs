use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use housesim::config::{load_config, load_disturbances, load_scene, load_task};
use housesim::disturbance::compose;
use housesim::error::{Error, Result};
use housesim::eval::export::{export, load_log, load_logs, report_csv};
use housesim::eval::{aggregate, render_log, report_table, run_matrix};
use housesim::Scene;

/// Grid-world household simulator and disturbance evaluation harness.
#[derive(Parser)]
#[command(name = "housesim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment matrix, write logs and the report, print the table.
    Run {
        config: PathBuf,
        /// Print the number of episodes and exit.
        #[arg(long)]
        dry_run: bool,
        /// Episode worker threads (overrides the config).
        #[arg(long)]
        workers: Option<usize>,
        /// Output directory (overrides the config).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply a disturbance file to a scene and write the canonical result.
    Mutate { scene: PathBuf, disturbances: PathBuf, out: PathBuf },
    /// Render an episode log's final semantic map as PGM, plus ASCII on stdout.
    Render {
        log: PathBuf,
        out: PathBuf,
        /// Also write the ASCII render to this file.
        #[arg(long)]
        ascii: Option<PathBuf>,
    },
    /// Check a .scene, .task, .dist, .cfg or log .json file.
    Validate { path: PathBuf },
    /// Re-aggregate exported logs from a run directory.
    Report {
        dir: PathBuf,
        /// Write report.csv and report.json here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn cmd_run(config: &Path, dry_run: bool, workers: Option<usize>, output: Option<PathBuf>) -> Result<()> {
    let loaded = load_config(config)?;
    let m = &loaded.matrix;
    if dry_run {
        let per_task: Vec<String> =
            m.tasks.iter().map(|t| format!("{}x{}", t.spec.variants.len(), t.spec.start_positions.len())).collect();
        println!(
            "{} episodes: {} tasks ({}) x {} conditions x {} profiles",
            m.cardinality(),
            m.tasks.len(),
            per_task.join(" + "),
            m.conditions.len(),
            m.profiles.len()
        );
        return Ok(());
    }
    let workers = workers.unwrap_or(loaded.config.workers).max(1);
    let logs = run_matrix(m, workers)?;
    let report = aggregate(&logs)?;
    let out = output.unwrap_or(loaded.output);
    export(&out, &report, &logs)?;
    print!("{}", report_table(&report));
    Ok(())
}

fn wall_diff(before: &Scene, after: &Scene) -> Vec<String> {
    let mut lines = Vec::new();
    if before.light_level != after.light_level {
        lines.push(format!("light {} -> {}", before.light_level, after.light_level));
    }
    let edges: BTreeSet<_> = before.walls.keys().chain(after.walls.keys()).collect();
    for e in edges {
        match (before.walls.get(e), after.walls.get(e)) {
            (None, Some(m)) => lines.push(format!("+ wall {e} {m}")),
            (Some(m), None) => lines.push(format!("- wall {e} {m}")),
            (Some(a), Some(b)) if a != b => lines.push(format!("~ wall {e} {a} -> {b}")),
            _ => {}
        }
    }
    lines
}

fn cmd_mutate(scene: &Path, disturbances: &Path, out: &Path) -> Result<()> {
    let base = load_scene(scene)?;
    let ds = load_disturbances(disturbances)?;
    let mutated = compose(&base, &ds).map_err(|e| Error::Invalid {
        context: format!("{} entry {} ({})", disturbances.display(), e.index + 1, e.disturbance),
        violations: e.violations,
    })?;
    write(out, &mutated.to_text())?;
    for line in wall_diff(&base, &mutated) {
        println!("{line}");
    }
    Ok(())
}

fn cmd_render(log: &Path, out: &Path, ascii: Option<PathBuf>) -> Result<()> {
    let log = load_log(log)?;
    let (text, pgm) = render_log(&log);
    write(out, &pgm)?;
    if let Some(a) = ascii {
        write(&a, &text)?;
    }
    print!("{text}");
    Ok(())
}

/// Problems found, one per line; empty when the file is valid.
fn cmd_validate(path: &Path) -> Result<Vec<String>> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let found = match ext {
        "scene" => load_scene(path).map(|_| ()),
        "task" => load_task(path).and_then(|t| {
            let v = housesim::task::validate_task(&t.spec, &t.floorplan);
            if v.is_empty() {
                Ok(())
            } else {
                Err(Error::Invalid { context: path.display().to_string(), violations: v })
            }
        }),
        "dist" => load_disturbances(path).map(|_| ()),
        "cfg" | "toml" => load_config(path).map(|_| ()),
        "json" => load_log(path).map(|_| ()),
        other => return Err(Error::Config(format!("unknown file type `.{other}` for {}", path.display()))),
    };
    match found {
        Ok(()) => Ok(vec![]),
        Err(Error::Invalid { context, violations }) => {
            Ok(violations.iter().map(|v| format!("{context}: {v}")).collect())
        }
        Err(e @ (Error::Parse { .. } | Error::Log { .. })) => Ok(vec![e.to_string()]),
        Err(e) => Err(e),
    }
}

fn cmd_report(dir: &Path, output: Option<PathBuf>) -> Result<()> {
    let logs = load_logs(dir)?;
    let report = aggregate(&logs)?;
    if let Some(out) = output {
        fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
        write(&out.join("report.csv"), &report_csv(&report))?;
        let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
        json.push('\n');
        write(&out.join("report.json"), &json)?;
    }
    print!("{}", report_table(&report));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Run { config, dry_run, workers, output } => cmd_run(&config, dry_run, workers, output),
        Command::Mutate { scene, disturbances, out } => cmd_mutate(&scene, &disturbances, &out),
        Command::Render { log, out, ascii } => cmd_render(&log, &out, ascii),
        Command::Validate { path } => match cmd_validate(&path) {
            Ok(problems) if problems.is_empty() => Ok(()),
            Ok(problems) => {
                for p in problems {
                    eprintln!("{p}");
                }
                return ExitCode::from(2);
            }
            Err(e) => Err(e),
        },
        Command::Report { dir, output } => cmd_report(&dir, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
