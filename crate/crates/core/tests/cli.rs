use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use greenseq::SpectrumReport;
use tempfile::TempDir;

const A2: &str = "vertices: 2\n1 -> 2\n";
const AFFINE21: &str = "vertices: 3\nbase: 0\n0 -> 1\n1 -> 2\n0 -> 2\n";
const A1: &str = "vertices: 1\n";

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(args)
        .env_remove("GREENSEQ_THREADS")
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn mutate_prints_quiver_and_colors() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let o = run(&["mutate", p(&a2), "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "vertices: 4\n2 -> 1\n2 -> 4\n3 -> 1\nfrozen: 3 4\ncolors: 1:Red 2:Green\n"
    );

    let o = run(&["mutate", p(&a2)]);
    assert_eq!(
        stdout(&o),
        "vertices: 4\n1 -> 2\n1 -> 3\n2 -> 4\nfrozen: 3 4\ncolors: 1:Green 2:Green\n"
    );

    let o = run(&["mutate", p(&a2), "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("frozen"));

    let o = run(&["mutate", p(&a2), "1", "1", "--green-only"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not green"));
}

#[test]
fn mutate_accepts_ice_quiver_files() {
    let ws = Workspace::new();
    let ice = ws.file(
        "ice.quiver",
        "vertices: 4\n1 -> 2\n1 -> 3\n2 -> 4\nfrozen: 3 4\n",
    );
    let o = run(&["mutate", p(&ice), "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("colors: 1:Green 2:Red\n"));
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let ws = Workspace::new();
    let bad = ws.file("bad.quiver", "vertices: 2\n1 -> 2\n2 -> 1\n");
    let o = run(&["spectrum", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));
}

#[test]
fn spectrum_json_round_trips() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let o = run(&["spectrum", p(&a2)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with(r#"{"lengths":[2,3],"#), "{text}");
    let report: SpectrumReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), text.trim_end());
    assert!(!report.truncated);

    let aff = ws.file("affine.quiver", AFFINE21);
    let o = run(&["spectrum", p(&aff), "--threads", "2"]);
    assert!(stdout(&o).starts_with(r#"{"lengths":[3,4,5],"#));
}

#[test]
fn truncation_and_strict_mode() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let o = run(&["spectrum", p(&a2), "--depth-bound", "2"]);
    assert!(o.status.success());
    let report: SpectrumReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.truncated);
    assert_eq!(report.lengths.into_iter().collect::<Vec<_>>(), vec![2]);
    let o = run(&["spectrum", p(&a2), "--depth-bound", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_needs_a_bound_for_unknown_shapes() {
    let ws = Workspace::new();
    let star = ws.file("d4.quiver", "vertices: 4\n1 -> 2\n1 -> 3\n1 -> 4\n");
    let o = run(&["spectrum", p(&star)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("depth bound"));
    let o = run(&[
        "spectrum",
        p(&star),
        "--depth-bound",
        "12",
        "--format",
        "table",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("truncated false"));
}

#[test]
fn threads_from_environment() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let o = Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(["spectrum", p(&a2)])
        .env("GREENSEQ_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(["spectrum", p(&a2)])
        .env("GREENSEQ_THREADS", "3")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn enumerate_lists_sequences_in_labels() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let o = run(&["enumerate", p(&a2)]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(&lines[..2], &["1 2", "2 1 2"]);
    assert!(lines[2].starts_with("# {"));
    let o = run(&["enumerate", p(&a2), "--no-memo", "--limit", "1"]);
    assert_eq!(stdout(&o).lines().next(), Some("1 2"));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn verify_commands() {
    let o = run(&["verify", "type-a", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = stdout(&o);
    assert_eq!(table.matches("PASS").count(), 4);
    assert!(table.contains("[3,6]"));

    let o = run(&["verify", "affine", "2", "--format", "json"]);
    assert!(o.status.success());
    let reports: Vec<greenseq::VerificationReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports[0].expected, (3, 5));
    assert!(reports[0].pass);

    let o = run(&["verify", "affine", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--long-running"));

    let o = run(&["verify", "type-a", "3", "--orientation=+"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "verify",
        "type-a",
        "3",
        "--orientation=+-",
        "--orientation=--",
    ]);
    assert!(o.status.success());
    let o = run(&["verify", "type-a", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains("->"))
        .count();
    (nodes, edges)
}

#[test]
fn graph_exports() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    let out = ws.dir.path().join("ex.dot");
    let o = run(&["graph", p(&a2), "--kind", "exchange", "--out", p(&out)]);
    assert!(o.status.success());
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph exchange {"));
    assert_eq!(dot_counts(&dot), (5, 5));
    let again = stdout(&run(&["graph", p(&a2)]));
    assert_eq!(again, dot);

    let hasse = stdout(&run(&["graph", p(&a2), "--kind", "hasse"]));
    assert_eq!(dot_counts(&hasse), (5, 5));

    let a1 = ws.file("a1.quiver", A1);
    assert_eq!(dot_counts(&stdout(&run(&["graph", p(&a1)]))), (2, 1));

    let aff = ws.file("affine.quiver", AFFINE21);
    let o = run(&["graph", p(&aff), "--kind", "hasse"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("type A"));
}

#[test]
fn compat_and_tau() {
    let o = run(&["compat", "++", "0,2", "1,3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"a":"[0,2]","b":"[1,3]","compatible":false,"ext_ab":1,"ext_ba":0}"#
    );
    let o = run(&["compat", "++", "[0,1]", "[2,3]"]);
    assert!(stdout(&o).contains(r#""compatible":true"#));
    let o = run(&["compat", "++", "0,5", "1,3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["tau", "+", "0", "1"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"module":"[0,1]","tau":"[1,2]","route":"coxeter"}"#
    );
    let o = run(&["tau", "+++", "1", "2"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"module":"[1,2]","tau":"[2,3]","route":"formula"}"#
    );
    let o = run(&["tau", "-+-", "1", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["compat", "-", "0,1", "1,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["tau", "+", "0", "2"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"module":"[0,2]","tau":null,"route":"projective"}"#
    );
}

#[test]
fn slice_queries() {
    let ws = Workspace::new();
    let a2 = ws.file("a2.quiver", A2);
    assert_eq!(
        stdout(&run(&["slice", "check", p(&a2), "[0,0]"])).trim(),
        "true"
    );
    assert_eq!(
        stdout(&run(&["slice", "check", p(&a2), "[0,2]"])).trim(),
        "false"
    );
    assert_eq!(
        stdout(&run(&["slice", "sources", p(&a2), "[0,0]"])).trim(),
        "[2]"
    );
    assert_eq!(
        stdout(&run(&["slice", "mutate", p(&a2), "[0,0]", "2"])).trim(),
        "[0,1]"
    );
    let o = run(&["slice", "mutate", p(&a2), "[0,0]", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let aff = ws.file("affine.quiver", AFFINE21);
    let path = stdout(&run(&["slice", "path", p(&aff), "[0,0,0]", "[1,1,1]"]));
    let path: Vec<Vec<u64>> = serde_json::from_str(&path).unwrap();
    assert_eq!(path.len(), 3);
    assert_eq!(path.last().unwrap(), &vec![1, 1, 1]);
    let o = run(&["slice", "path", p(&aff), "[1,1,1]", "[0,0,0]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["slice", "check", p(&a2), "not json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeded_check_reports_seed() {
    let o = run(&["check", "--seed", "11", "--cases", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("mutation involution: 50 cases, ok"));
    assert!(text.contains("descending path on A_4: 50 cases, ok"));
}
