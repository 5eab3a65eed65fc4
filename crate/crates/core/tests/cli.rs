use std::path::Path;
use std::process::{Command, Output};

const WALKS: &str = "vars: x, y\ninit: x = 0; y = 0\nbody:\n  x = x + 2 [1/2] x - 1\n  y = y + 1 [1/2] y - 2\n";
const EXAMPLE_LRS: &str = r#"{"coeffs": ["2", "-2", "-12"], "init": ["2", "-3", "3"]}"#;

fn polyinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyinv")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_two_walks() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "walks.loop", WALKS);
    let o = polyinv(&["invariants", "--loop", &l, "--degree", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["ring"].as_array().unwrap().len(), 5);

    let basis = write(dir.path(), "basis.json", &stdout(&o));
    let m = polyinv(&["member", "--basis", &basis, "--poly", "E[x*y] - E[x]*E[y]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(v["member"], true);
}

#[test]
fn basis_round_trips_through_groebner() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "walks.loop", WALKS);
    let first = stdout(&polyinv(&["invariants", "--loop", &l, "--degree", "2"]));
    let basis = write(dir.path(), "basis.json", &first);
    let again = polyinv(&["groebner", "--basis", &basis]);
    assert!(again.status.success());
    assert_eq!(stdout(&again), first);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "walks.loop", WALKS);
    let a = polyinv(&["invariants", "--loop", &l, "--degree", "2", "--format", "text"]);
    let b = polyinv(&["invariants", "--loop", &l, "--degree", "2", "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn skolem_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let lrs = write(dir.path(), "lrs.json", EXAMPLE_LRS);
    let o = polyinv(&["reduce-skolem-p2p", "--lrs", &lrs, "--format", "text"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("init: x0 = 2; x1 = -6; x2 = -36"), "{text}");
    assert!(text.starts_with("# target: x0 = 0; x1 = 0; x2 = 0"));

    let p2p = write(dir.path(), "p2p.loop", &text);
    let o = polyinv(&["reduce-p2p-spinv", "--loop", &p2p, "--format", "text"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("vars: x0, x1, x2, f, g"));

    let o = polyinv(&["verify-lemma31", "--lrs", &lrs, "--horizon", "10"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["first_zero"], 5);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn detect_zero_on_generated_loop() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "p2p.loop", "# target: x = 4; y = 6\nvars: x, y\ninit: x = 0; y = 0\nbody:\n  x = x + 2\n  y = y + 3\n");
    let spinv = stdout(&polyinv(&["reduce-p2p-spinv", "--loop", &l, "--format", "text"]));
    let s = write(dir.path(), "spinv.loop", &spinv);
    let o = polyinv(&["detect-zero", "--loop", &s, "--degree", "3", "--horizon", "25"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["eventual_zero"], 2);
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = polyinv(&["invariants", "--loop", "/definitely/not/here.loop"]);
    assert_eq!(o.status.code(), Some(2));
    let o = polyinv(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_errors_are_json() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "guard.loop", "vars: x\ninit: x = 0\nbody:\n  x = x + 1 if x < 3\n");
    let o = polyinv(&["invariants", "--loop", &l]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["error"].is_string());

    let rational = write(dir.path(), "lrs.json", r#"{"coeffs": ["1/2"], "init": ["1"]}"#);
    let o = polyinv(&["reduce-skolem-spinv", "--lrs", &rational]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_and_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let walk = write(dir.path(), "w.loop", "vars: x\ninit: x = 0\nbody:\n  x = x + 1 [1/2] x - 1\n");
    let o = polyinv(&["distribution", "--loop", &walk, "--horizon", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "x=-2: 1/4\nx=0: 1/2\nx=2: 1/4\n");
    let o = polyinv(&["simulate", "--loop", &walk]);
    assert_eq!(o.status.code(), Some(1));
    let counter = write(dir.path(), "c.loop", "vars: x\ninit: x = 0\nbody:\n  x = x + 1\n");
    let o = polyinv(&["simulate", "--loop", &counter, "--horizon", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "0: x=0\n1: x=1\n2: x=2\n");
}

#[test]
fn emitted_loops_reparse_identically() {
    use polyinv::loops::{parse_loop, LrsInstance, LrsJson};
    use polyinv::reductions::{skolem_to_p2p, skolem_to_spinv_direct};
    let dir = tempfile::tempdir().unwrap();
    let lrs_path = write(dir.path(), "lrs.json", EXAMPLE_LRS);
    let lrs = LrsInstance::from_json(&serde_json::from_str::<LrsJson>(EXAMPLE_LRS).unwrap()).unwrap();
    let p2p = stdout(&polyinv(&["reduce-skolem-p2p", "--lrs", &lrs_path, "--format", "text"]));
    assert_eq!(&parse_loop(&p2p).unwrap(), skolem_to_p2p(&lrs).system());
    let direct = stdout(&polyinv(&["reduce-skolem-spinv", "--lrs", &lrs_path, "--format", "text"]));
    assert_eq!(parse_loop(&direct).unwrap(), skolem_to_spinv_direct(&lrs).unwrap());
}
