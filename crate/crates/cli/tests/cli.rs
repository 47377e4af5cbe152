// Copyright 2026 The braidq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::io::Write;
use std::process::{Command, Output};

fn braidq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidq"))
        .args(args)
        .env_remove("BRAIDQ_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--n", "2"],
        vec!["bench", "--n", "25"],
        vec!["analyze", "--n", "3", "--index", "1", "--trace", "ABC"],
        vec!["word", "parse", "s1 x2"],
        vec!["bell", "--n", "3", "--index", "9"],
    ] {
        let o = braidq(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn parse_error_points_at_position() {
    let o = braidq(&["word", "parse", "s1 x2"]);
    assert_eq!(
        stderr(&o),
        "error: expected 's' at position 3\n  s1 x2\n     ^\n"
    );
}

#[test]
fn bell_state_table() {
    let o = braidq(&["bell", "--n", "3", "--index", "1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "state  bits  amplitude\n\
         1      000   +0.5\n\
         1      011   -0.5\n\
         1      101   -0.5\n\
         1      110   -0.5\n\
         # 1 state(s), expected 4 terms each of magnitude 0.5: structure ok\n"
    );
}

#[test]
fn analyze_json_record() {
    let o = braidq(&[
        "--format",
        "json-lines",
        "analyze",
        "--n",
        "3",
        "--index",
        "1",
        "--trace",
        "C",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["retained"], "AB");
    assert_eq!(v["lambdas"], serde_json::json!([0.5, 0.5, 0.0, 0.0]));
    assert_eq!(v["concurrence"], 0.0);
    assert_eq!(v["verdict"], "separable");
    let text = stdout(&o);
    let keys: Vec<&str> = text.split('"').skip(1).step_by(2).take(3).collect();
    assert_eq!(keys, ["input_label", "bell n=3 index=1", "retained"]);
}

#[test]
fn json_lines_are_reproducible() {
    let args = [
        "--format",
        "json-lines",
        "verify",
        "--n",
        "5",
        "--seed",
        "11",
    ];
    let a = braidq(&args);
    let b = braidq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn word_reduce_and_diagram() {
    assert_eq!(
        stdout(&braidq(&["word", "reduce", "s1 s2 s2' s1'"])),
        "(empty)\n"
    );
    assert_eq!(stdout(&braidq(&["word", "normalize", "s3 s1 s3'"])), "s1\n");
    assert_eq!(
        stdout(&braidq(&["word", "diagram", "s1 s2"])),
        "1   2   3\n\
         |   |   |\n \\ /    |\n  \\     |   s1\n / \\    |\n|   |   |\n\
         |    \\ /\n|     \\     s2\n|    / \\\n|   |   |\n"
    );
}

#[test]
fn apply_from_state_file_and_csv() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "state 3\n1+0j\n0+0j\n0+0j\n0+0j\n0+0j\n0+0j\n0+0j\n0+0j\n"
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let o = braidq(&[
        "--format",
        "csv",
        "word",
        "apply",
        "s1 s2",
        "--state-file",
        path,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "index,bits,re,im\n1,000,0.5,0\n4,011,-0.5,0\n6,101,-0.5,0\n7,110,-0.5,0\n"
    );
}

#[test]
fn config_from_environment() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "dense_cap = 2").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_braidq"))
        .args(["word", "compile", "s1 s2"])
        .env("BRAIDQ_CONFIG", f.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the cap of 2"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "bogus = 1").unwrap();
    let o = braidq(&["--config", bad.path().to_str().unwrap(), "bell", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field"));
}

#[test]
fn compile_writes_fixture_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cascade.txt");
    let o = braidq(&["word", "compile", "s1 s2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("matrix 8 8"));
    assert_eq!(
        lines.next(),
        Some("0.5+0j 0+0j 0+0j 0.5+0j 0+0j 0.5+0j 0.5+0j 0+0j")
    );
}
