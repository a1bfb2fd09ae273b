use std::process::{Command, Output};

fn davenport(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_davenport")).args(args).env_remove("DAVENPORT_ZEROS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn popov_two_reports() {
    let o = davenport(&["verify", "popov", "--x", "5", "--x", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["params"]["x"], "5");
    assert_eq!(lines[1]["params"]["x"], "10");
    for r in &lines {
        assert_eq!(r["pass"], true);
        assert_eq!(r["bound_is_heuristic"], true);
    }
}

#[test]
fn thm12_at_integer_is_exact() {
    let o = davenport(&["verify", "thm12", "--fn", "moebius", "--x", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["lhs"], 0.0);
}

#[test]
fn fine_d2_scan_passes_on_coprime_n() {
    let o = davenport(&["fine", "--family", "d2", "--f", "liouville", "--m", "4", "--l", "2", "--N", "3..11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut rows = out.lines();
    assert!(rows.next().unwrap().starts_with("family,fn,m,l,"));
    let rows: Vec<&str> = rows.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().any(|r| r.contains(",4,false,")));
}

#[test]
fn fine_fails_with_tiny_tolerance() {
    let o = davenport(&["fine", "--family", "cos-power", "--f", "moebius", "--m", "1", "--N", "3", "--nmax", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let o = davenport(&["fine", "--family", "cos-power", "--f", "moebius", "--m", "1", "--N", "3", "--nmax", "10000", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_data_errors_exit_2() {
    assert_eq!(davenport(&["verify", "popov", "--bogus"]).status.code(), Some(2));
    assert_eq!(davenport(&["verify", "thm11", "--x", "2"]).status.code(), Some(2));
    assert_eq!(davenport(&["verify", "popov", "--x", "3/2"]).status.code(), Some(2));
    assert_eq!(davenport(&["sieve", "--fn", "lambda", "--limit", "5"]).status.code(), Some(2));
    assert_eq!(davenport(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    let o = davenport(&["--out", path.to_str().unwrap(), "sieve", "--fn", "moebius", "--limit", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let vals: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(vals, ["1", "-1", "-1", "0", "-1", "1"]);
}

#[test]
fn custom_table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    std::fs::write(&path, "n,f\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n").unwrap();
    let o = davenport(&["sieve", "--fn", "custom", "--custom", path.to_str().unwrap(), "--limit", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() == 7);
}

#[test]
fn zeros_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.txt");
    std::fs::write(&path, "14.134725141734693\n21.022039638771555\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_davenport"))
        .args(["verify", "popov", "--x", "5", "--nmax", "10000"])
        .env("DAVENPORT_ZEROS", &path)
        .output()
        .unwrap();
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["params"]["zeros"], "2");
}
