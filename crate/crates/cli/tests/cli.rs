use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", &format!("{name}.tgl")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn fquandle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fquandle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn color_trefoil() {
    let o = fquandle(&["color", &corpus("trefoil_closed"), "--quandle", "dihedral:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 9\n"), "{}", stdout(&o));
}

#[test]
fn color_json_schema() {
    let o = fquandle(&[
        "color",
        &corpus("figure_eight"),
        "--quandle",
        "dihedral:5",
        "--limit",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quandle"], "dihedral:5");
    assert_eq!(v["count"], 25);
    let gens = v["generators"].as_array().unwrap();
    let cols = v["colorings"].as_array().unwrap();
    assert_eq!(cols.len(), 4);
    assert!(cols.iter().all(|c| c.as_array().unwrap().len() == gens.len()));
}

#[test]
fn table_file_quandle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r3.txt");
    std::fs::write(&path, "3\n0 2 1\n2 1 0\n1 0 2\n").unwrap();
    let o = fquandle(&["color", &corpus("trefoil_closed"), "--quandle", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("count: 9\n"));
}

#[test]
fn bad_table_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2\n0 1\n0 1\n").unwrap();
    let o = fquandle(&["color", &corpus("trefoil"), "--quandle", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn present_empty() {
    let o = fquandle(&["present", &corpus("empty")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("gens:\n"));
}

#[test]
fn present_is_deterministic() {
    let a = fquandle(&["present", &corpus("pretzel"), "--format", "json"]);
    let b = fquandle(&["present", &corpus("pretzel"), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn presentation_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&fquandle(&["present", &corpus("trefoil")]));
    let path = dir.path().join("trefoil.pres");
    std::fs::write(&path, &text).unwrap();
    let again = fquandle(&["present", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
    let closed = stdout(&fquandle(&["construct", "closure", path.to_str().unwrap()]));
    let cpath = dir.path().join("closed.pres");
    std::fs::write(&cpath, closed).unwrap();
    let o = fquandle(&["color", cpath.to_str().unwrap(), "--quandle", "dihedral:3"]);
    assert!(stdout(&o).contains("count: 9\n"));
}

#[test]
fn simplify_keeps_counts() {
    let dir = tempfile::tempdir().unwrap();
    let s = stdout(&fquandle(&["simplify", &corpus("figure_eight")]));
    let path = dir.path().join("s.pres");
    std::fs::write(&path, s).unwrap();
    let o = fquandle(&["color", path.to_str().unwrap(), "--quandle", "dihedral:5"]);
    let direct = fquandle(&["color", &corpus("figure_eight"), "--quandle", "dihedral:5"]);
    let count = |o: &Output| stdout(o).lines().find(|l| l.starts_with("count")).unwrap().to_string();
    assert_eq!(count(&o), count(&direct));
}

fn construct_count(args: &[&str]) -> u64 {
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--quandle", "dihedral:3", "--format", "json"]);
    let o = fquandle(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["count"].as_u64().unwrap()
}

#[test]
fn constructions() {
    assert_eq!(construct_count(&["periodic", &corpus("pretzel"), "--p", "3"]), 27);
    assert_eq!(construct_count(&["closure", &corpus("trefoil")]), 9);
    assert_eq!(construct_count(&["sum", &corpus("trefoil_reverse"), &corpus("trefoil_mirror")]), 27);
    assert_eq!(construct_count(&["satellite", &corpus("double_pattern"), &corpus("trefoil"), "--eps", "-+"]), 3);
    assert_eq!(construct_count(&["cable", &corpus("trefoil"), "--eps", "+-"]), 9);
}

#[test]
fn plat_needs_paired_signs() {
    let o = fquandle(&["construct", "plat", &corpus("trefoil")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("plat"));
}

#[test]
fn braid_action_relation() {
    let a = stdout(&fquandle(&["braid-action", "1,2,1", "3"]));
    let b = stdout(&fquandle(&["braid-action", "2,1,2", "3"]));
    assert_eq!(a, b);
    let inv = fquandle(&["braid-action", "-1,1", "2"]);
    assert_eq!(stdout(&inv), "a1 -> (a1, 1)\na2 -> (a2, 1)\n");
}

#[test]
fn verify_suite_passes() {
    let o = fquandle(&["verify", "reidemeister"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_2_with_grammar() {
    for args in [
        vec!["frobnicate"],
        vec!["color", "/no/such/file.tgl", "--quandle", "dihedral:3"],
        vec!["color", &corpus("trefoil"), "--quandle", "dihedral:0"],
        vec!["construct", "cable", &corpus("trefoil"), "--eps", "+x"],
        vec!["verify", "everything"],
    ] {
        let o = fquandle(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("slice_line"), "{args:?}");
    }
}

#[test]
fn malformed_tangle_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tgl");
    std::fs::write(&path, "bottom + +\nx 1\nx 7\ntop + +\n").unwrap();
    let o = fquandle(&["present", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}
