//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bellclone_core::claims::{verify_criterion, ClaimRecord};

const DESCRIPTIONS: [&str; 11] = [
    "two-state cloning, all pairs and inputs, n in {2,3,5}",
    "bilateral C-NOT certificate on all 16 label pairs",
    "Smolin state PPT across A:B, NPT across 1:3 cuts",
    "teleportation through the Smolin state: Choi matrix and Bell fidelity",
    "ancilla preparation, exact for m = 3, 4 and uniform up to m = 64",
    "four-state cloning for n in {2,3} with 2 ebits",
    "quasi-pure preparation and distillation are reversible",
    "sigma_N construction and inverse round trip",
    "E_c / E_D formula suite on a 999-point grid",
    "linearity and necessity witnesses",
    "verify-all exits 0 in under 60 s",
];

/// Wall-clock budgets stated per criterion.
fn budget(criterion: u8) -> Option<Duration> {
    match criterion {
        1 => Some(Duration::from_secs(1)),
        6 => Some(Duration::from_secs(10)),
        11 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

fn detail(records: &[ClaimRecord]) -> String {
    records
        .iter()
        .map(|r| {
            format!(
                "{}={:e}/{:e}{}",
                r.id,
                r.value,
                r.tolerance,
                if r.passed { "" } else { "!" }
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_binary() -> (bool, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_bellclone"))
        .args(["verify-all", "--format", "json"])
        .output()
        .expect("bellclone binary runs");
    let records: Vec<serde_json::Value> =
        serde_json::from_slice(&output.stdout).unwrap_or_default();
    let all = !records.is_empty() && records.iter().all(|r| r["passed"] == true);
    let ok = output.status.code() == Some(0) && all;
    (
        ok,
        format!("exit={:?} records={}", output.status.code(), records.len()),
    )
}

fn main() -> ExitCode {
    let mut failures = 0;
    for criterion in 1..=11u8 {
        let start = Instant::now();
        let (mut ok, info) = if criterion == 11 {
            run_binary()
        } else {
            let records = verify_criterion(criterion);
            (
                !records.is_empty() && records.iter().all(|r| r.passed),
                detail(&records),
            )
        };
        let elapsed = start.elapsed();
        if let Some(limit) = budget(criterion) {
            ok &= elapsed < limit;
        }
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {criterion:>2} {} ({:.3} s) {} :: {info}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            DESCRIPTIONS[criterion as usize - 1],
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
