use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convex-matching"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_disjoint_rows() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "3 3\n1 1\n2 2\n3 3\n");
    let text = stdout(&run(&["solve", "--unweighted", s(&g)]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("3"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn solve_weighted_single_edge() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "1 1\n1 1 9\n");
    let text = stdout(&run(&["solve", "--weighted", s(&g)]));
    assert_eq!(text.lines().next(), Some("9 1"));
}

#[test]
fn solve_with_colorings() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "2 4\n1 2\n2 4\n");
    let text = stdout(&run(&["solve", "--colorings", s(&g)]));
    assert!(text.starts_with("2\n"));
    assert!(text.contains("2 1 2 2 3 4"), "{text}");
}

#[test]
fn parse_error_reports_line_and_fails() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "2 3\n1 2\n3 1\n");
    let out = run(&["solve", s(&g)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["solve", "/nonexistent/graph.txt"]);
    assert!(!out.status.success());
}

#[test]
fn generated_instances_round_trip_through_certify() {
    let dir = TempDir::new().unwrap();
    for (model, seed) in [("uniform-intervals", "1"), ("fixed-length:3", "2"), ("shared-endpoint-adversarial", "3")] {
        let g = dir.path().join("g.txt");
        stdout(&run(&["gen", "--n-u", "60", "--n-v", "40", "--model", model, "--seed", seed, "--out", s(&g)]));
        let m = write(&dir, "m.txt", &stdout(&run(&["solve", s(&g)])));
        let c = dir.path().join("c.txt");
        stdout(&run(&["cover", s(&g), "--out", s(&c)]));
        let out = run(&["certify", s(&g), s(&m), s(&c)]);
        assert_eq!(out.status.code(), Some(0), "{model}");
    }
}

#[test]
fn certify_rejects_wrong_size_with_reason() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "2 2\n1 1\n2 2\n");
    let m = write(&dir, "m.txt", "1\n1 1\n");
    let c = dir.path().join("c.txt");
    stdout(&run(&["cover", s(&g), "--out", s(&c)]));
    let out = run(&["certify", s(&g), s(&m), s(&c)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("SizeMismatch"));
}

#[test]
fn cover_of_full_and_disjoint_instances() {
    let dir = TempDir::new().unwrap();
    let full = write(&dir, "full.txt", "3 4\n1 4\n1 4\n1 4\n");
    assert!(stdout(&run(&["cover", s(&full)])).starts_with("1 3\n"));
    let disjoint = write(&dir, "d.txt", "4 4\n1 1\n2 2\n3 3\n4 4\n");
    assert!(stdout(&run(&["cover", s(&disjoint)])).starts_with("4 4\n"));
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--n-u", "30", "--n-v", "30", "--seed", "11", "--weights", "-3", "3"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert!(a.starts_with("30 30\n"));
    let full = stdout(&run(&["gen", "--n-u", "3", "--n-v", "5", "--model", "full-intervals"]));
    assert_eq!(full, "3 5\n1 5\n1 5\n1 5\n");
}

#[test]
fn bench_csv() {
    let empty = stdout(&run(&["bench"]));
    assert_eq!(empty, "algorithm,n_u,n_v,m,nanos\n");
    let csv = stdout(&run(&["bench", "--sizes", "10,20", "--repetitions", "1"]));
    assert_eq!(csv.lines().count(), 1 + 2 * 3);
    assert!(csv.contains("naive_dp@uniform-intervals,10,10,"));
}
