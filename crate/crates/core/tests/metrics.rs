mod common;

use common::synthetic_log;
use housesim::agent::AgentKind;
use housesim::eval::export::{export, load_logs, report_csv, CSV_COLUMNS};
use housesim::eval::{aggregate, subgoal_progress, Percent, Report};
use housesim::Error;
use proptest::prelude::*;

#[test]
fn twelve_of_seventy_two() {
    let logs: Vec<_> =
        (0..72).map(|i| synthetic_log("t", i, "baseline", AgentKind::VisionOnly, 5, 2, i < 12)).collect();
    let r = aggregate(&logs).unwrap();
    let g = r.group("visiononly", "baseline").unwrap();
    assert_eq!(g.rates.success_rate.to_string(), "16.67");
    assert_eq!(g.rates.successes, 12);
    // 12 * 5 + 60 * 2 done of 360
    assert_eq!((g.rates.subgoals_done, g.rates.subgoals_total), (180, 360));
    assert_eq!(g.rates.gc_rate_micro.to_string(), "50.00");
}

#[test]
fn progress_fraction() {
    let log = synthetic_log("t", 0, "c", AgentKind::MapDepth, 9, 2, false);
    assert!((subgoal_progress(&log) - 2.0 / 9.0).abs() < 1e-12);
    let r = aggregate(&[log]).unwrap();
    assert_eq!(r.groups[0].rates.gc_rate_micro.to_string(), "22.22");
    assert_eq!(subgoal_progress(&synthetic_log("t", 0, "c", AgentKind::MapDepth, 0, 0, true)), 1.0);
    assert_eq!(subgoal_progress(&synthetic_log("t", 0, "c", AgentKind::MapDepth, 0, 0, false)), 0.0);
}

#[test]
fn duplicate_keys_rejected() {
    let l = synthetic_log("t", 0, "c", AgentKind::MapDepth, 3, 1, false);
    assert!(matches!(aggregate(&[l.clone(), l]), Err(Error::DuplicateKey(_))));
}

#[test]
fn csv_header_and_reload() {
    let logs: Vec<_> = (0..8)
        .map(|i| {
            synthetic_log(
                ["a", "b"][i % 2],
                i,
                ["baseline", "glass"][i / 4],
                AgentKind::MapGtDepth,
                4,
                i % 4,
                i % 3 == 0,
            )
        })
        .collect();
    let r = aggregate(&logs).unwrap();
    let csv = report_csv(&r);
    assert_eq!(csv.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let dir = tempfile::tempdir().unwrap();
    export(dir.path(), &r, &logs).unwrap();
    let back = load_logs(dir.path()).unwrap();
    assert_eq!(aggregate(&back).unwrap(), r);
    let json: Report = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json, r);
}

fn within_half_hundredth(p: Percent, exact: f64) -> bool {
    (p.as_f64() - exact).abs() <= 0.005 + 1e-9
}

proptest! {
    #[test]
    fn rates_match_a_naive_recount(
        eps in prop::collection::vec((0usize..3, 0usize..3, 0usize..=10, any::<bool>()), 1..120),
        plan_lens in prop::collection::vec(0usize..10, 3),
    ) {
        let tasks = ["t1", "t2", "t3"];
        let logs: Vec<_> = eps
            .iter()
            .enumerate()
            .map(|(i, (t, p, done, ok))| {
                let kind = AgentKind::ALL[*p];
                synthetic_log(tasks[*t], i, "baseline", kind, plan_lens[*t], *done, *ok)
            })
            .collect();
        let r = aggregate(&logs).unwrap();
        for g in &r.groups {
            let mine: Vec<_> = logs.iter().filter(|l| l.profile.kind.name() == g.profile).collect();
            let n = mine.len() as f64;
            let s = mine.iter().filter(|l| l.outcome == housesim::eval::Outcome::Success).count() as f64;
            let total: usize = mine.iter().map(|l| l.plan.len()).sum();
            let done: usize = mine.iter().map(|l| l.subgoals_done()).sum();
            let macro_mean = mine.iter().map(|l| subgoal_progress(l)).sum::<f64>() / n;
            prop_assert_eq!(g.rates.episodes, mine.len() as u64);
            prop_assert!(within_half_hundredth(g.rates.success_rate, 100.0 * s / n));
            if total > 0 {
                prop_assert!(within_half_hundredth(g.rates.gc_rate_micro, 100.0 * done as f64 / total as f64));
            }
            prop_assert!(within_half_hundredth(g.rates.gc_rate_macro, 100.0 * macro_mean));
            prop_assert!(g.rates.gc_rate_macro >= g.rates.success_rate);
            // every episode of a task has the same plan, so pooled GC bounds SR per task
            for t in &g.tasks {
                if t.rates.subgoals_total > 0 {
                    prop_assert!(t.rates.gc_rate_micro >= t.rates.success_rate);
                }
            }
        }
    }

    #[test]
    fn percent_rounds_half_up(num in 0u128..10_000, den in 1u128..10_000) {
        prop_assume!(num <= den);
        let p = Percent::from_ratio(num, den).hundredths() as u128;
        // p is the integer nearest 10000*num/den, halves going up
        prop_assert!(2 * p * den <= 20_000 * num + den);
        prop_assert!(20_000 * num + den < 2 * (p + 1) * den);
    }
}
