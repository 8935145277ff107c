//! Runs a bundled experiment and prints the report with a per-task
//! breakdown and outcome counts.
//!
//! cargo run --release --example run_experiment -- data/experiments/glasswall.cfg

use std::collections::BTreeMap;
use std::env;
use std::process::ExitCode;

use housesim::config::load_config;
use housesim::eval::{aggregate, report_table, run_matrix, Outcome};

fn main() -> ExitCode {
    let path = env::args().nth(1).unwrap_or_else(|| "data/experiments/glasswall.cfg".into());
    let loaded = match load_config(path.as_ref()) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let logs = match run_matrix(&loaded.matrix, loaded.config.workers) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let report = aggregate(&logs).expect("matrix keys are unique");
    print!("{}", report_table(&report));
    println!();
    for g in &report.groups {
        for t in &g.tasks {
            println!(
                "{:<11} {:<10} {:<22} SR {:>6}  GC {:>6}",
                g.profile, g.condition, t.task, t.rates.success_rate, t.rates.gc_rate_micro
            );
        }
    }
    println!();
    let mut outcomes: BTreeMap<(String, String, String), usize> = BTreeMap::new();
    for l in &logs {
        let o = match l.outcome {
            Outcome::Success => "success",
            Outcome::FailLimit => "fail_limit",
            Outcome::StepBudget => "step_budget",
        };
        *outcomes.entry((l.profile.kind.name().into(), l.condition.clone(), o.into())).or_default() += 1;
    }
    for ((p, c, o), n) in outcomes {
        println!("{p:<11} {c:<10} {o:<12} {n}");
    }
    ExitCode::SUCCESS
}
