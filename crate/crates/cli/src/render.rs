//! Text and CSV renderings of reports.

use std::fmt::Write;

use bellclone_core::claims::ClaimRecord;
use bellclone_core::format::sig17;
use bellclone_core::measures::{MeasureReport, SigmaRow};
use bellclone_core::protocols::runner::{Check, RunResult};

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run_text(r: &RunResult) -> String {
    let mut s = String::new();
    if let Some(out) = &r.output {
        s.push_str("# output\n");
        s.push_str(out);
    }
    if !r.branches.is_empty() {
        s.push_str("# branches\n");
        for b in &r.branches {
            let out = b.output.as_deref().map_or("discarded".to_string(), |o| {
                o.trim_end().replace('\n', "; ")
            });
            writeln!(
                s,
                "a={} p={} ebits={} -> {}",
                u8::from(b.a),
                sig17(b.probability),
                b.ebits,
                out
            )
            .unwrap();
        }
    }
    let l = &r.ledger;
    s.push_str("# ledger\n");
    writeln!(s, "ebits_consumed {}", l.ebits_consumed).unwrap();
    writeln!(s, "ebits_distilled {}", l.ebits_distilled).unwrap();
    writeln!(s, "classical_bits {}", l.classical_bits).unwrap();
    writeln!(s, "steps {}", l.steps.len()).unwrap();
    s.push_str("# checks\n");
    for c in &r.checks {
        writeln!(
            s,
            "{} {} {:e} (tolerance {:e})",
            status(c.passed),
            c.name,
            c.value,
            c.tolerance
        )
        .unwrap();
    }
    s
}

pub fn checks_csv(checks: &[Check]) -> String {
    let mut s = String::from("name,value,tolerance,passed\n");
    for c in checks {
        writeln!(
            s,
            "{},{},{},{}",
            c.name,
            sig17(c.value),
            sig17(c.tolerance),
            c.passed
        )
        .unwrap();
    }
    s
}

pub fn sigma_csv(rows: &[SigmaRow]) -> String {
    let mut s = String::from("p,ec_sigma1,ed_sigma1,ec_sigmaN,ed_sigmaN,gap\n");
    for r in rows {
        let cells = [
            r.p,
            r.ec_sigma1,
            r.ed_sigma1,
            r.ec_sigma_n,
            r.ed_sigma_n,
            r.gap,
        ]
        .map(sig17);
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn reports_csv(reports: &[MeasureReport]) -> String {
    let mut s = String::from("quantity,state,cut,value,provenance\n");
    for r in reports {
        let provenance = serde_json::to_value(r.provenance).unwrap();
        writeln!(
            s,
            "{},{},{},{},{}",
            r.quantity,
            r.state,
            r.cut,
            sig17(r.value),
            provenance.as_str().unwrap_or_default()
        )
        .unwrap();
    }
    s
}

pub fn claims_text(records: &[ClaimRecord]) -> String {
    let mut s = String::new();
    for r in records {
        writeln!(
            s,
            "{} [{}] {}: {:e} vs {:e}",
            status(r.passed),
            r.criterion,
            r.id,
            r.value,
            r.tolerance
        )
        .unwrap();
    }
    s
}

pub fn claims_csv(records: &[ClaimRecord]) -> String {
    let mut s = String::from("id,criterion,passed,value,tolerance\n");
    for r in records {
        writeln!(
            s,
            "{},{},{},{},{}",
            r.id,
            r.criterion,
            r.passed,
            sig17(r.value),
            sig17(r.tolerance)
        )
        .unwrap();
    }
    s
}
