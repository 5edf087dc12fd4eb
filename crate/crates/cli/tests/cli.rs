use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const DIGON: &str = r#"{
  "genus": 0,
  "boundary": [2],
  "punctures": 1,
  "edges": {"interior": ["x", "y"], "boundary": ["x2", "x3"]},
  "triangles": [["x3", "y", "x"], ["x2", "x", "y"]]
}"#;

const NOTCHED_DIGON: &str = r#"{
  "genus": 0,
  "boundary": [2],
  "punctures": 1,
  "edges": {"interior": ["x", "y"], "boundary": ["x2", "x3"]},
  "triangles": [["x3", "y", "x"], ["x2", "x", "y"]],
  "tags": [
    {"arc": "x", "ends": ["notched", "plain"], "puncture_ends": ["v", null]},
    {"arc": "y", "ends": ["notched", "plain"], "puncture_ends": ["v", null]}
  ]
}"#;

const TORUS_WITH_LOOP: &str = r#"{
  "genus": 1,
  "punctures": 1,
  "edges": {"interior": ["a", "b", "c"]},
  "triangles": [["a", "b", "c"], ["a", "b", "c"]],
  "loops": [{"name": "L", "laurent": "a*b^-1 + b*a^-1"}]
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterskein"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn torus_matrix_and_mutation() {
    let o = run(&["matrix", "--builtin", "punctured-torus"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[[0,2,-2],[-2,0,2],[2,-2,0]]\n");
    let rows: Vec<Vec<i64>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows, vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]);

    let o = run(&["mutate", "--builtin", "punctured-torus", "--seq", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "x3' = x1^2*x3^-1 + x2^2*x3^-1\n[[0,-2,2],[2,0,-2],[-2,2,0]]\n"
    );
    let by_name = run(&["mutate", "--builtin", "punctured-torus", "--seq", "x3"]);
    assert_eq!(stdout(&by_name), stdout(&o));
    let back = run(&["mutate", "--builtin", "punctured-torus", "--seq", "3,3"]);
    assert!(stdout(&back).ends_with("[[0,2,-2],[-2,0,2],[2,-2,0]]\n"));
}

#[test]
fn explore_writes_dot() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("g.dot");
    let o = run(&[
        "explore",
        "--builtin",
        "disk:5",
        "--depth",
        "10",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("nodes: 5\nedges: 5\ncluster variables: 5\nsaturated: yes\n"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph exchange {"));
    assert_eq!(text.matches(" -- ").count(), 5);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["explore", "--builtin", "disk:6", "--depth", "3", "--dot", "-"]);
    let b = run(&["explore", "--builtin", "disk:6", "--depth", "3", "--dot", "-"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn laurent_check_passes() {
    let o = run(&["laurent-check", "--builtin", "punctured-torus", "--maxlen", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "sequences: 121\npositive coefficients: yes\nPASS\n");
}

#[test]
fn rho_check_on_files() {
    let dir = TempDir::new().unwrap();
    let plain = write(&dir, "digon.json", DIGON);
    let o = run(&["rho-check", &plain, "--flip", "x"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.contains("flip x (punctured digon)"));
    assert!(text.contains("rho(x) rho(x') = x2 + x3\n"));
    assert!(text.ends_with("PASS\n"));

    let notched = write(&dir, "notched.json", NOTCHED_DIGON);
    let v = run(&["validate", &notched]);
    assert!(v.status.success(), "{v:?}");
    assert!(stdout(&v).contains("notched at: v"));
    for k in ["1", "2"] {
        let o = run(&["rho-check", &notched, "--flip", k]);
        assert!(o.status.success(), "{o:?}");
    }
}

#[test]
fn square_generators_with_loops() {
    let dir = TempDir::new().unwrap();
    let torus = write(&dir, "torus.json", TORUS_WITH_LOOP);
    let o = run(&["generators", &torus, "--square"]);
    assert!(o.status.success(), "{o:?}");
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "loop L = a*b^-1 + a^-1*b");
    assert!(lines[9].starts_with("decorated v1*v1*c = "));
}

#[test]
fn generator_lines_and_counts() {
    let o = run(&["generators", "--builtin", "punctured-torus"]);
    assert_eq!(
        stdout(&o),
        "loop h1\nloop h2\nloop h1,h2\narc v1,v1\narc v1,v1 via h1\narc v1,v1 via h2\narc v1,v1 via h1,h2\n"
    );
    let o = run(&["generators", "--builtin", "disk:4", "--counts"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chords"], 0);
    assert_eq!(v["loops"], 0);
    assert_eq!(v["arcs"], 10);
    let o = run(&[
        "generators",
        "--builtin",
        "punctured-torus",
        "--counts",
        "--budget",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{\n  \"genus\": 0,\n  \"boundary\": [4,\n}");
    let o = run(&["matrix", &broken]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("broken.json:4:"), "{err}");

    let unknown = write(
        &dir,
        "unknown.json",
        &DIGON.replace("\"genus\"", "\"colour\": 1, \"genus\""),
    );
    let o = run(&["matrix", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unknown field `colour`"));

    assert_eq!(run(&["matrix", "--builtin", "disk:2"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--builtin", "sphere"]).status.code(), Some(2));
    assert_eq!(
        run(&["mutate", "--builtin", "disk:4", "--seq", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["matrix"]).status.code(), Some(2));
    assert_eq!(
        run(&["matrix", "--builtin", "disk:4", "--bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn invalid_triangulation_fails_validation() {
    let dir = TempDir::new().unwrap();
    let bad = DIGON.replace(r#"["x2", "x", "y"]"#, r#"["x2", "x", "x"]"#);
    let p = write(&dir, "bad.json", &bad);
    let o = run(&["validate", &p]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("violation:"), "{text}");
    assert!(text.ends_with("FAIL\n"));
    assert_eq!(run(&["matrix", &p]).status.code(), Some(2));
    assert!(Path::new(&p).exists());
}
