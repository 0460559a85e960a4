use std::process::{Command, Output};

fn susylat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susylat"))
        .args(args)
        .output()
        .expect("failed to launch susylat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table1_csv_matches_golden() {
    let o = susylat(&["--format", "csv", "table1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("data/table1.csv"));
}

#[test]
fn witten_structured_output() {
    let o = susylat(&["--format", "structured", "witten", "rect:5x5", "--method", "transfer"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "witten");
    assert_eq!(v["seed"], 2009);
    assert_eq!(v["results"][0]["witten"], -9);
    assert_eq!(v["results"][0]["sites"], 25);
}

#[test]
fn groundstates_human_reports_match() {
    let o = susylat(&["groundstates", "octagon:2x2:torus"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("total 7"), "{text}");
    assert!(text.contains("predicted  7  MATCH"), "{text}");
    assert!(text.contains("quarter filling  yes"), "{text}");
}

#[test]
fn groundstates_methods_agree_in_csv() {
    let exact = stdout(&susylat(&["--format", "csv", "groundstates", "diagonal:3x2:cylinder"]));
    let numeric = stdout(&susylat(&[
        "--format", "csv", "groundstates", "diagonal:3x2:cylinder", "--method", "numeric",
    ]));
    let row = |s: &str| s.lines().nth(1).unwrap().split(',').map(String::from).collect::<Vec<_>>();
    let (e, n) = (row(&exact), row(&numeric));
    assert_eq!(e[0], "diagonal:3x2:cylinder");
    assert_eq!(e[5], "4");
    // everything but the method column agrees
    assert_eq!(e[..2], n[..2]);
    assert_eq!(e[3..], n[3..]);
}

#[test]
fn verify_single_torus_passes() {
    let o = susylat(&["--format", "csv", "verify", "rect:4x4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("\"(4,0)x(0,4)\",16,"), "{row}");
    assert!(row.ends_with(",PASS"), "{row}");
}

#[test]
fn spectrum_pairs_levels() {
    let o = susylat(&["spectrum", "chain:6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 unpaired  PASS"));
}

#[test]
fn spec_file_argument() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lat.toml");
    std::fs::write(&path, "[[lattice]]\nfamily = \"chain\"\nn = 5\n").unwrap();
    let o = susylat(&["--format", "csv", "dims", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "lattice,f,dim\nchain:5:open,0,1\nchain:5:open,1,5\nchain:5:open,2,6\nchain:5:open,3,1\n"
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let o = susylat(&["--format", "csv", "--output", path.to_str().unwrap(), "witten", "rect:3x3"]);
    assert!(o.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().nth(1).unwrap().ends_with(",4"), "{written}");
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["--format", "structured", "--workers", "3", "groundstates", "rect:4x5"];
    let a = susylat(&args);
    let b = susylat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(susylat(&["witten", "bogus"]).status.code(), Some(2));
    assert_eq!(susylat(&["nonsense"]).status.code(), Some(2));
    assert_eq!(susylat(&["--max-sites", "4", "groundstates", "rect:3x3"]).status.code(), Some(3));
    let missing = susylat(&["dims", "/nonexistent/lattice.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
}
