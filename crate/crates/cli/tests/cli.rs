use std::io::Write;
use std::process::{Command, Output, Stdio};

fn butterfly(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_butterfly"));
    cmd.args(args).env_remove("BUTTERFLY_MAX_N");
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_classify() {
    let c8 = butterfly(&["gen", "cycle:8"], None);
    assert!(c8.status.success());
    let out = butterfly(&["classify"], Some(&stdout(&c8)));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("square\n"), "{}", stdout(&out));

    let k4 = butterfly(&["gen", "complete:4"], None);
    let out = butterfly(&["classify", "-"], Some(&stdout(&k4)));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("not-square\n"));
}

#[test]
fn classify_json_carries_a_certificate() {
    let out = butterfly(&["--format", "json", "classify", "wheel:6"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "square");
    assert_eq!(v["certificate"]["phi"].as_array().unwrap().len(), 7);
}

#[test]
fn family_input_reports_the_expected_verdict() {
    let out = butterfly(&["classify", "circulant:10:1,3"], None);
    let text = stdout(&out);
    assert!(text.starts_with("square\n"));
    assert!(text.contains("family: square"), "{text}");
}

#[test]
fn root_and_square_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = butterfly(&["root", "cycle:8", "--all"], None);
    assert!(out.status.success());
    let roots = stdout(&out);
    assert_eq!(roots.lines().count(), 1);
    let path = dir.path().join("root.json");
    std::fs::write(&path, roots.lines().next().unwrap()).unwrap();

    let sq = butterfly(&["square", path.to_str().unwrap()], None);
    let cls = butterfly(&["classify"], Some(&stdout(&sq)));
    assert!(stdout(&cls).starts_with("square"));

    let none = butterfly(&["root", "complete:5"], None);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn glue_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"labels":{"1":1,"2":2}}"#).unwrap();
    std::fs::write(&b, r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"labels":{"1":1,"2":2,"3":3}}"#).unwrap();
    let out = butterfly(&["glue", a.to_str().unwrap(), b.to_str().unwrap()], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn product_and_prune() {
    let out = butterfly(&["--format", "json", "product", "cartesian", "complete:2", "complete:2"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 4);

    let out = butterfly(&["--format", "json", "prune", "circulant:8:1,2", "--involution", "0,7,6,5,4,3,2,1"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 14);

    let bad = butterfly(&["prune", "cycle:6", "--involution", "1,2,3,4,5,0"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dot_output_is_deterministic() {
    let a = butterfly(&["--format", "dot", "gen", "wheel:6"], None);
    let b = butterfly(&["--format", "dot", "gen", "wheel:6"], None);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for colour in ["gold", "lightblue", "lightpink"] {
        assert!(text.contains(colour));
    }
}

#[test]
fn verify_exit_status_follows_the_report() {
    let out = butterfly(&["verify", "hypercube", "--max-n", "5"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));

    let out = butterfly(&["--format", "json", "verify", "cycles", "--jobs", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["pass"], true);

    let out = butterfly(&["verify", "circulant-1-3"], None);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(butterfly(&["verify", "nope"], None).status.code(), Some(2));
    assert_eq!(butterfly(&["classify", "A"], None).status.code(), Some(2));
    assert_eq!(butterfly(&["gen", "cycle:x"], None).status.code(), Some(2));
    assert_eq!(butterfly(&["verify", "cycles", "--max-n", "30"], None).status.code(), Some(2));
}

#[test]
fn search_limit_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .args(["classify", "cycle:8"])
        .env("BUTTERFLY_MAX_N", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_reproducible() {
    let a = butterfly(&["sweep", "--seed", "7", "--count", "40"], None);
    let b = butterfly(&["sweep", "--seed", "7", "--count", "40"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("0 disagreements"));
}
