//! The acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or misses its runtime budget. Runs without
//! the libtest harness so the lines are never captured.

use std::process::Command;
use std::time::{Duration, Instant};

use dcft_core::cft::REPORT_SCHEMA_VERSION;
use dcft_core::suite::{
    criterion_artin, criterion_class_numbers, criterion_derived_vs_homology, criterion_dold_kan, criterion_dold_thom,
    criterion_functoriality, criterion_homology_table, criterion_kummer, criterion_poitou_tate, criterion_theorem,
    determinism_criterion, run_suite, Criterion, SuiteConfig, SuiteReport,
};

type Runner = fn(&SuiteConfig) -> Criterion;

const RUNNERS: [(Runner, Option<u64>); 10] = [
    (criterion_derived_vs_homology, Some(300)),
    (criterion_homology_table, None),
    (criterion_dold_kan, None),
    (criterion_dold_thom, Some(60)),
    (criterion_class_numbers, Some(60)),
    (criterion_kummer, None),
    (criterion_poitou_tate, None),
    (criterion_theorem, None),
    (criterion_artin, Some(60)),
    (criterion_functoriality, None),
];

fn line(c: &Criterion, elapsed: Option<Duration>, budget: Option<u64>) -> bool {
    let within = match (elapsed, budget) {
        (Some(e), Some(b)) => e.as_secs() < b,
        _ => true,
    };
    let ok = c.pass && within;
    let timing = match (elapsed, budget) {
        (Some(e), Some(b)) => format!(" [{:.1}s, budget {b}s]", e.as_secs_f64()),
        (Some(e), None) => format!(" [{:.1}s]", e.as_secs_f64()),
        _ => String::new(),
    };
    println!(
        "{} criterion {:2}: {} ({} checks){timing}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        c.report.checks.len()
    );
    for f in c.report.failures().take(10) {
        println!("      failed: {}: {} vs {}", f.name, f.lhs, f.rhs);
    }
    ok
}

fn acceptance_criteria() -> bool {
    let cfg = SuiteConfig::default();
    let mut all = true;
    let mut criteria = Vec::new();
    for (run, budget) in RUNNERS {
        let t = Instant::now();
        let c = run(&cfg);
        all &= line(&c, Some(t.elapsed()), budget);
        criteria.push(c);
    }
    let first = SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: cfg.clone(),
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    };
    let second = run_suite(&cfg);
    let c11 = determinism_criterion(&first, &second);
    all &= line(&c11, None, None);
    all
}

/// Two CLI invocations with the same config write byte-identical reports.
fn cli_payload_is_byte_identical() -> bool {
    let bin = env!("CARGO_BIN_EXE_dcft");
    let base = std::env::temp_dir().join(format!("dcft-determinism-{}", std::process::id()));
    let mut payloads = Vec::new();
    for k in 0..2 {
        let dir = base.join(k.to_string());
        let st = Command::new(bin)
            .args(["verify-theorem", "-23", "--pmax", "2000", "--quiet", "--output-dir"])
            .arg(&dir)
            .status()
            .expect("binary runs");
        if !st.success() {
            return false;
        }
        payloads.push(std::fs::read(dir.join("verify-theorem_-23.json")).expect("report written"));
    }
    let _ = std::fs::remove_dir_all(&base);
    payloads[0] == payloads[1]
}

fn main() {
    let criteria = acceptance_criteria();
    let cli = cli_payload_is_byte_identical();
    println!("{} cli: two runs write byte-identical reports", if cli { "PASS" } else { "FAIL" });
    if criteria && cli {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
}
