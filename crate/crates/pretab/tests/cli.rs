use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pretab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pretab"))
        .args(args)
        .env_remove("PRETAB_BOUND")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_verdicts_and_exit_codes() {
    let valid = pretab(&["--logic", "pm4", "check", "[]([]x1 -> x2) | []([]x2 -> x1)"]);
    assert_eq!(code(&valid), 0);
    assert!(String::from_utf8_lossy(&valid.stdout).starts_with("Valid in PM4"));

    let refuted = pretab(&["--logic", "pm2", "--format", "json", "check", "[]x | []~x"]);
    assert_eq!(code(&refuted), 1);
    let report = json(&refuted);
    assert_eq!(report["verdict"], "refuted");
    assert_eq!(report["size"], 1);

    let budget = pretab(&[
        "--logic",
        "pm4",
        "--max-steps",
        "1",
        "check",
        "[]([]x1 -> x2) | []([]x2 -> x1)",
    ]);
    assert_eq!(code(&budget), 2);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&pretab(&["--logic", "pm2", "check", "[]x |"])), 3);
    assert_eq!(code(&pretab(&["check", "x"])), 3);
    assert_eq!(code(&pretab(&["--logic", "pm9", "check", "x"])), 3);
    assert_eq!(
        code(&pretab(&["--logic", "pm2", "--bound", "0", "check", "x"])),
        3
    );
    assert_eq!(code(&pretab(&["--logic", "pm4", "complete-set", "x"])), 3);
    assert_eq!(code(&pretab(&["frobnicate"])), 3);
    assert_eq!(code(&pretab(&["--help"])), 0);
}

#[test]
fn countermodel_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cm.txt");
    let out = pretab(&[
        "--logic",
        "pm2",
        "check",
        "[]x | []~x",
        "--dump-countermodel",
        path(&dump),
    ]);
    assert_eq!(code(&out), 1);
    let text = fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("worlds: 2\n"), "{text}");
    assert!(text.ends_with("refuted: 0\n"), "{text}");
}

#[test]
fn unify_modes() {
    let mgu = json(&pretab(&[
        "--logic", "pm5", "--format", "json", "unify", "x",
    ]));
    assert_eq!(mgu["type"], "mgu");
    assert_eq!(mgu["certified"], true);

    let set = pretab(&["--logic", "pm2", "--format", "json", "unify", "[]x | []~x"]);
    assert_eq!(code(&set), 0);
    let set = json(&set);
    assert_eq!(set["type"], "complete-set");
    assert_eq!(set["cardinality"], 2);

    let ground = json(&pretab(&[
        "--logic", "pm3", "--format", "json", "unify", "--mode", "ground", "x1 & x2",
    ]));
    assert_eq!(
        ground["unifiers"],
        serde_json::json!([{"x1": "true", "x2": "true"}])
    );

    let none = pretab(&["--logic", "pm2", "unify", "x & ~x"]);
    assert_eq!(code(&none), 1);
}

#[test]
fn compare_reads_reports_and_objects() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let falsum = dir.path().join("false.json");
    let set = pretab(&["--logic", "pm2", "--format", "json", "unify", "[]x | []~x"]);
    fs::write(&report, &set.stdout).unwrap();
    fs::write(&falsum, r#"{"x": "false"}"#).unwrap();

    let same = pretab(&[
        "--logic",
        "pm2",
        "compare",
        "[]x | []~x",
        path(&falsum),
        path(&falsum),
    ]);
    assert_eq!(code(&same), 0);
    // The report's first unifier is `x := true`, incomparable with `x := false`.
    let apart = pretab(&[
        "--logic",
        "pm2",
        "compare",
        "[]x | []~x",
        path(&report),
        path(&falsum),
    ]);
    assert_eq!(code(&apart), 1);
    let missing = pretab(&[
        "--logic",
        "pm2",
        "compare",
        "x",
        "/nonexistent/a.json",
        path(&falsum),
    ]);
    assert_eq!(code(&missing), 4);
}

#[test]
fn config_file_flags_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("pretab.conf");
    fs::write(&conf, "# defaults\nlogic = pm4\nformat = json\nbound = 3\n").unwrap();
    let c = path(&conf);

    let from_file = json(&pretab(&["--config", c, "check", "x -> x"]));
    assert_eq!(from_file["logic"], "PM4");
    assert_eq!(from_file["bound"], 3);

    let flagged = json(&pretab(&[
        "--config", c, "--bound", "5", "--logic", "pm1", "check", "x -> x",
    ]));
    assert_eq!(flagged["logic"], "PM1");
    assert_eq!(flagged["bound"], 5);

    let env = Command::new(env!("CARGO_BIN_EXE_pretab"))
        .args(["--config", c, "check", "x -> x"])
        .env("PRETAB_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(json(&env)["bound"], 2);

    fs::write(&conf, "colour = blue\n").unwrap();
    assert_eq!(
        code(&pretab(&["--config", c, "--logic", "pm2", "check", "x"])),
        3
    );
}

#[test]
fn rnf_and_charmodel() {
    let rnf = json(&pretab(&["--format", "json", "rnf", "[]x"]));
    assert_eq!(rnf["disjuncts"].as_array().unwrap().len(), 1);

    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("t12.txt");
    let out = pretab(&[
        "charmodel",
        "--n",
        "1",
        "--layers",
        "2",
        "--dump",
        path(&dump),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("worlds: 6\n"));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("cluster: ")).count(),
        6
    );
}

#[test]
fn corpus_suites_pass() {
    let out = pretab(&["corpus", "--suite", "ground"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(code(&pretab(&["corpus", "--suite", "nonsense"])), 3);
}
