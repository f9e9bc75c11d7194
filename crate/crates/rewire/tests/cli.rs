use std::path::Path;
use std::process::{Command, Output};

use rewire::files::{CodeDocument, ScheduleDocument};
use rewire::parse_schedule;
use serde_json::Value;
use tempfile::TempDir;

fn rewire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rewire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn codes_list_names_the_catalog() {
    let out = rewire(&["codes", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["toy2", "ff4", "five", "steane", "qrm15", "qrm15-parent"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing from\n{text}");
    }
    let json: Value = serde_json::from_slice(&rewire(&["codes", "list", "--json"]).stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 6);
}

#[test]
fn codes_show_emits_a_valid_code_file() {
    let dir = TempDir::new().unwrap();
    let out = rewire(&["codes", "show", "steane"]);
    assert_eq!(code(&out), 0);
    let file = dir.path().join("steane.json");
    std::fs::write(&file, &out.stdout).unwrap();
    let v = rewire(&["validate", "--code", path_str(&file)]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));

    assert_eq!(code(&rewire(&["codes", "show", "nope"])), 2);
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let mut doc: CodeDocument = serde_json::from_slice(&rewire(&["codes", "show", "five"]).stdout).unwrap();
    doc.logical_z[0] = doc.stabilizers[0].clone();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = rewire(&["validate", "--code", path_str(&broken)]);
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).contains("c(logical_x[0], logical_z[0]) = 0 but must be 1"),
        "{}",
        stdout(&out)
    );

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{\"name\": \"x\", \"n\": ").unwrap();
    assert_eq!(code(&rewire(&["validate", "--code", path_str(&malformed)])), 2);

    let missing = dir.path().join("missing.json");
    std::fs::write(
        &missing,
        r#"{"name":"t","n":2,"stabilizers":["+ZZ"],"logical_x":["+XX"]}"#,
    )
    .unwrap();
    let out = rewire(&["validate", "--code", path_str(&missing)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("logical_z"));
}

#[test]
fn qrm15_square_root_of_y_in_three_steps() {
    let dir = TempDir::new().unwrap();
    let out_file = dir.path().join("sy.json");
    let out = rewire(&[
        "synthesize",
        "--code",
        "qrm15",
        "--program",
        "SY 0",
        "--gm",
        "gauge",
        "--min-distance",
        "3",
        "--out",
        path_str(&out_file),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let schedule = parse_schedule(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(schedule.steps.len(), 3);
    assert!(schedule.audit.iter().all(|a| a.distance.satisfies(3)));
}

#[test]
fn cnot_on_four_two_two_has_nine_steps() {
    let dir = TempDir::new().unwrap();
    let out_file = dir.path().join("cnot.json");
    let out = rewire(&[
        "synthesize",
        "--code",
        "ff4",
        "--program",
        "CNOT 0 1",
        "--out",
        path_str(&out_file),
    ]);
    assert_eq!(code(&out), 0);
    let doc: ScheduleDocument = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(doc.steps.len(), 9);
}

#[test]
fn unsatisfiable_distance_reports_best_found() {
    let dir = TempDir::new().unwrap();
    let out_file = dir.path().join("never.json");
    let out = rewire(&[
        "synthesize",
        "--code",
        "toy2",
        "--program",
        "H 0",
        "--min-distance",
        "5",
        "--out",
        path_str(&out_file),
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("distance constraint unsatisfiable within budget"),
        "{text}"
    );
    assert!(text.contains("best found 1"), "{text}");
    assert!(!out_file.exists());
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let out_file = dir.path().join("x.json");
    let o = path_str(&out_file);
    assert_eq!(
        code(&rewire(&[
            "synthesize",
            "--code",
            "steane",
            "--program",
            "H 3",
            "--out",
            o
        ])),
        2
    );
    assert_eq!(
        code(&rewire(&[
            "synthesize",
            "--code",
            "steane",
            "--program",
            "FOO 0",
            "--out",
            o
        ])),
        2
    );
    assert_eq!(
        code(&rewire(&[
            "synthesize",
            "--code",
            "steane",
            "--program",
            "H 0",
            "--gm",
            "first",
            "--out",
            o
        ])),
        2
    );
    assert_eq!(
        code(&rewire(&[
            "synthesize",
            "--code",
            "steane",
            "--program",
            "H 0",
            "--gm",
            "gauge",
            "--out",
            o
        ])),
        2
    );
    assert_eq!(
        code(&rewire(&[
            "synthesize",
            "--code",
            "qrm15-parent",
            "--program",
            "H 0",
            "--out",
            o
        ])),
        2
    );
    assert_eq!(code(&rewire(&["distance", "--code", "no-such-code"])), 2);
    assert_eq!(code(&rewire(&["frobnicate"])), 2);
}

fn synthesize(dir: &TempDir, code_name: &str, program: &str) -> std::path::PathBuf {
    let file = dir.path().join(format!("{code_name}.json"));
    let out = rewire(&[
        "synthesize",
        "--code",
        code_name,
        "--program",
        program,
        "--out",
        path_str(&file),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    file
}

#[test]
fn fresh_schedule_passes_all_branches_and_oracle() {
    let dir = TempDir::new().unwrap();
    let file = synthesize(&dir, "steane", "H 0");
    let out = rewire(&[
        "simulate",
        "--code",
        "steane",
        "--schedule",
        path_str(&file),
        "--branches",
        "all",
        "--expect",
        "H 0",
        "--oracle",
    ]);
    let text = stdout(&out);
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains("oracle and tableau agree"), "{text}");

    let out = rewire(&[
        "simulate",
        "--code",
        "steane",
        "--schedule",
        path_str(&file),
        "--branches",
        "sample",
        "20",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("20 sampled branch(es) agree"));
}

#[test]
fn wrong_expectation_fails() {
    let dir = TempDir::new().unwrap();
    let file = synthesize(&dir, "steane", "H 0");
    let out = rewire(&[
        "simulate",
        "--code",
        "steane",
        "--schedule",
        path_str(&file),
        "--expect",
        "S 0",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("action mismatch"));
}

#[test]
fn tampered_schedule_names_the_step() {
    let dir = TempDir::new().unwrap();
    let file = synthesize(&dir, "five", "S 0");
    let mut doc: ScheduleDocument = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let m = &mut doc.steps[1].measure;
    *m = if let Some(rest) = m.strip_prefix('+') {
        format!("-{rest}")
    } else {
        format!("+{}", &m[1..])
    };
    std::fs::write(&file, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = rewire(&[
        "simulate",
        "--code",
        "five",
        "--schedule",
        path_str(&file),
        "--branches",
        "all",
        "--oracle",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL tableau"), "{text}");
    assert!(text.contains("FAIL oracle"), "{text}");

    let mut doc: ScheduleDocument = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    doc.steps[2].measure = "+IIIIZ".into();
    std::fs::write(&file, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = rewire(&["simulate", "--code", "five", "--schedule", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("step 2"), "{}", stdout(&out));
}

#[test]
fn schedule_for_another_code_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let file = synthesize(&dir, "steane", "H 0");
    let out = rewire(&["simulate", "--code", "five", "--schedule", path_str(&file)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn distance_command() {
    for (name, expected) in [("steane", "3 "), ("qrm15", "3 "), ("ff4", "2 ")] {
        let out = rewire(&["distance", "--code", name]);
        assert_eq!(code(&out), 0);
        assert!(
            stdout(&out).contains(&format!("distance: {expected}")),
            "{}",
            stdout(&out)
        );
    }
    let out = rewire(&["distance", "--code", "steane", "--max-weight", "1"]);
    assert!(stdout(&out).contains("≥ 2"), "{}", stdout(&out));
}

fn without_timings(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn reports_are_deterministic_across_runs_and_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rewire"))
            .args(["distance", "--code", "qrm15", "--json"])
            .env("REWIRE_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = without_timings(&run("1").stdout);
    assert_eq!(one, without_timings(&run("3").stdout));
    assert_eq!(one, without_timings(&run("0").stdout));

    let dir = TempDir::new().unwrap();
    let file = synthesize(&dir, "ff4", "CNOT 1 0; S 0");
    let args = [
        "simulate",
        "--code",
        "ff4",
        "--schedule",
        path_str(&file),
        "--branches",
        "sample",
        "10",
        "--json",
    ];
    assert_eq!(
        without_timings(&rewire(&args).stdout),
        without_timings(&rewire(&args).stdout)
    );
}
