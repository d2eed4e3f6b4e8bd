use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn hopflift(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hopflift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = hopflift(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("hopflift-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn generated_examples_validate() {
    let s3 = ok(&["gen", "S3", "--p", "7"], "");
    assert!(ok(&["validate"], &s3).lines().all(|l| l.ends_with("ok")));
    let double = ok(&["gen", "C2", "--p", "3", "--double"], "");
    ok(&["validate"], &double);
    let f4 = ok(&["gen", "C3", "--p", "2", "--m", "2", "--dual"], "");
    ok(&["validate", "-"], &f4);
}

#[test]
fn analyze_reports_non_semisimplicity() {
    let c3 = ok(&["gen", "C3", "--p", "3"], "");
    let out = hopflift(&["analyze"], &c3);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not semisimple"));
    let report = ok(&["analyze", "--json"], &ok(&["gen", "S3", "--p", "7"], ""));
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["irreducible_dimensions"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["antipode_squared_order"], 1);
}

#[test]
fn threshold_and_lemma() {
    assert_eq!(ok(&["threshold", "--dim", "6"], "").trim(), "6");
    assert_eq!(ok(&["threshold", "--dim", "8"], "").trim(), "64");
    assert_eq!(hopflift(&["threshold", "--dim", "2"], "").status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&ok(&["lemma41", "--poly", "1,1,0,1", "--r", "4", "--p", "5", "--json"], "")).unwrap();
    assert_eq!(v["bound"], "3");
    assert_eq!(v["conclusion"], true);
    let out = hopflift(&["lemma41", "--poly", "2,1,1", "--r", "3", "--p", "3"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("hypotheses fail"));
}

#[test]
fn usage_and_schema_errors_exit_two() {
    assert_eq!(hopflift(&["validate"], "{").status.code(), Some(2));
    let mut v: serde_json::Value = serde_json::from_str(&ok(&["gen", "C2", "--p", "5"], "")).unwrap();
    v.as_object_mut().unwrap().remove("S");
    let out = hopflift(&["validate"], &v.to_string());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(".S"));
    assert_eq!(hopflift(&["gen", "C9", "--p", "5"], "").status.code(), Some(2));
    assert_eq!(hopflift(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(hopflift(&["lift", "--precision", "2", "--strategy", "sideways"], "").status.code(), Some(2));
}

#[test]
fn broken_presentation_fails_validation() {
    let mut v: serde_json::Value = serde_json::from_str(&ok(&["gen", "C2", "--p", "5"], "")).unwrap();
    v["S"] = serde_json::json!([[1, 0], [0, 2]]);
    let out = hopflift(&["validate"], &v.to_string());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("antipode"));
}

#[test]
fn gen_output_round_trips() {
    let text = ok(&["gen", "Q8", "--p", "3", "--dual"], "");
    assert_eq!(ok(&["dual"], &ok(&["dual"], &text)), text);
}

#[test]
fn lift_pipeline() {
    let dir = Scratch::new("lift");
    let c2 = ok(&["gen", "C2", "--p", "5"], "");
    let canonical = ok(&["lift", "--precision", "3"], &c2);
    let perturbed = ok(&["lift", "--precision", "3", "--strategy", "perturbed:4"], &c2);
    assert_eq!(ok(&["lift", "--precision", "3", "--strategy", "perturbed:4"], &c2), perturbed);
    ok(&["validate"], &perturbed);
    let (a, b) = (dir.write("a.json", &canonical), dir.write("b.json", &perturbed));
    let eta: serde_json::Value = serde_json::from_str(&ok(&["reconcile", &a, &b], "")).unwrap();
    let rows = eta.as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(c.as_u64().unwrap() % 5, u64::from(i == j));
        }
    }
    let id = dir.write("id.json", "[[1,0],[0,1]]");
    let lifted: serde_json::Value = serde_json::from_str(&ok(&["lift-map", "--source", &a, "--target", &b, "--map", &id], "")).unwrap();
    assert_eq!(&lifted, &eta);
    let r1 = dir.write("r1.json", "[[3,3],[3,2]]");
    assert_eq!(ok(&["lift-rmatrix", &a, "--r", &r1], "").trim(), "[[63,63],[63,62]]");
    let transcript: serde_json::Value =
        serde_json::from_str(&ok(&["lift", "--precision", "3", "--strategy", "perturbed:4", "--json"], &c2)).unwrap();
    assert_eq!(transcript["transcript"].as_array().unwrap().len(), 2);
}

#[test]
fn lift_refuses_non_semisimple_input() {
    let c3 = ok(&["gen", "C3", "--p", "3"], "");
    let out = hopflift(&["lift", "--precision", "2"], &c3);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn double_writes_its_r_matrix() {
    let dir = Scratch::new("double");
    let r_path = dir.0.join("r.json");
    let d = ok(&["double", "--r-out", r_path.to_str().unwrap()], &ok(&["gen", "C2", "--p", "3"], ""));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&r_path).unwrap()).unwrap();
    assert_eq!(r.as_array().unwrap().len(), 4);
    let h: serde_json::Value = serde_json::from_str(&d).unwrap();
    assert_eq!(h["dim"], 4);
}

#[test]
fn cohomology_of_small_examples() {
    let out = ok(&["cohomology"], &ok(&["gen", "C2", "--p", "5"], ""));
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.contains("= 0")));
}

#[test]
fn accept_runs_selected_criteria() {
    let out = ok(&["accept", "7", "11"], "");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
}
