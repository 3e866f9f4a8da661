use std::process::{Command, Output};

fn bellclone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellclone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn clone_two_state() {
    let o = bellclone(&[
        "clone", "--set", "two", "--pair", "B1,B3", "--input", "B3", "--n", "2", "--engine", "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1.0000000000000000 10 10\n"));
    assert!(out.contains("ebits_consumed 1\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn clone_four_state_json() {
    let o = bellclone(&[
        "clone", "--set", "four", "--input", "B2", "--n", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["protocol"], "clone-four");
    assert_eq!(v["output"], "1.0000000000000000 01 01 01\n");
    assert_eq!(v["ledger"]["ebits_consumed"], 2.0);
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &[
            "clone", "--set", "two", "--pair", "B1,B3", "--input", "B2", "--n", "2",
        ],
        &[
            "clone", "--set", "two", "--pair", "B1,B1", "--input", "B1", "--n", "2",
        ],
        &["clone", "--set", "four", "--input", "B5", "--n", "2"],
        &["prepare", "--m", "1"],
        &["measures", "--curve", "sigma", "--grid", "0"],
        &["distill", "--p", "0.5,0.5", "--n", "3"],
    ];
    for args in cases {
        assert_eq!(bellclone(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn prepare_and_teleport() {
    let o = bellclone(&["prepare", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("0.25000000000000000 ").count(), 4);
    assert!(out.contains("ebits_consumed 2\n"));

    let o = bellclone(&["teleport", "--channel", "smolin", "--input", "B1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# output\n1.0000000000000000 00\n"));
}

#[test]
fn distill_branch_table() {
    let o = bellclone(&["distill", "--p", "0.4,0.1,0.3,0.2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("a=0 p=0.50000000000000000 ebits=2 -> 1.0000000000000000 00 00\n"));
    assert!(out.contains("a=1 p=0.50000000000000000 ebits=2 -> 1.0000000000000000 10 10\n"));
}

#[test]
fn sigma_curve_csv() {
    let o = bellclone(&["measures", "--curve", "sigma", "--n", "3", "--grid", "99"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("p,ec_sigma1,ed_sigma1,ec_sigmaN,ed_sigmaN,gap")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 99);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    for r in &rows {
        if (r[0] - 0.5).abs() < 1e-12 {
            assert!(r[5].abs() < 1e-12);
        } else {
            assert!(r[5] > 0.0);
        }
    }
}

#[test]
fn rho_m_table() {
    let o = bellclone(&["measures", "--state", "rhoM", "--m", "2..8"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values, vec![0.0, 2.0, 2.0, 4.0, 4.0, 6.0, 6.0]);
}

#[test]
fn verify_all_report() {
    let o = bellclone(&["verify-all"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = records.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    let ppt = records.iter().find(|r| r["id"] == "smolin-ppt").unwrap();
    assert!(ppt["value"].as_f64().unwrap() <= 1e-9);
    let choi = records.iter().find(|r| r["id"] == "teleport-choi").unwrap();
    assert!(choi["value"].as_f64().unwrap() <= 1e-9);
    assert!(records.iter().all(|r| r["passed"] == true));
    assert_eq!(bellclone(&["verify-all"]).stdout, o.stdout);
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("bellclone-e2e-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("prepare.json");
    let args = [
        "prepare",
        "--m",
        "5",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ];
    assert_eq!(bellclone(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(bellclone(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    assert!(!first.contains(&b'\r'));
    std::fs::remove_dir_all(&dir).unwrap();
}
