use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn flagalg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagalg")).args(args).current_dir(dir).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();
    write("one.poset", "elements: a\ncovers:\n");
    write("chain2.poset", "elements: a b\ncovers:\na b\n");
    write("chain3.poset", "elements: a b c\ncovers:\na b\nb c\n");
    write("cycle.poset", "elements: a b c\ncovers:\na b\nb c\nc a\n");
    write("nonflag.json", r#"{"dim": 2, "ring": "Q", "table": [[0, 0, [[1, "1"]]]]}"#);
    dir
}

#[test]
fn check_up_to_three_over_q() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "--all-up-to", "3", "--ring", "Q"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let posets = report["posets"].as_array().unwrap();
    assert_eq!(posets.len(), 8);
    let ids = report["theorem_ids"].as_array().unwrap();
    for p in posets {
        let entries = p["theorems"].as_array().unwrap();
        let listed: Vec<&Value> = entries.iter().map(|e| &e["id"]).collect();
        assert_eq!(listed, ids.iter().collect::<Vec<_>>());
        assert!(entries.iter().all(|e| e["status"] == "pass"));
        assert!(entries.iter().all(|e| e.get("wall_time_ms").is_none()));
    }
    assert_eq!(report["summary"]["pass"], 56);
    assert!(String::from_utf8_lossy(&out.stderr).contains("56 pass"));
}

#[test]
fn check_on_a_decomposable_ring() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "chain2.poset", "--ring", "Zm:6"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    let entries = report["posets"][0]["theorems"].as_array().unwrap();
    let status = |id: &str| entries.iter().find(|e| e["id"] == id).unwrap()["status"].as_str().unwrap().to_owned();
    assert_eq!(status("product-convolution"), "pass");
    assert_eq!(status("power-associativity"), "pass");
    assert_eq!(status("commutator-is-j1"), "unsupported");
    assert_eq!(status("derivations"), "unsupported");
    assert_eq!(status("reconstruction"), "skipped");
}

#[test]
fn check_over_z_skips_field_suites() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "chain3.poset", "--ring", "Z"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["summary"]["skipped"], 2);
    assert_eq!(report["summary"]["pass"], 5);
}

#[test]
fn input_errors_exit_two() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "cycle.poset"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
    assert!(out.stdout.is_empty());
    for args in [
        &["check", "--all-up-to", "0"][..],
        &["check", "missing.poset"],
        &["check", "chain2.poset", "--ring", "Fp:4"],
        &["check"],
        &["derivations", "chain2.poset", "--n", "1"],
        &["enumerate-posets", "9"],
    ] {
        assert_eq!(flagalg(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_cap_and_determinism() {
    let dir = workspace();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_flagalg"))
            .args(["check", "--all-up-to", "3", "--seed", "3"])
            .env("FLAGALG_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn timings_are_opt_in() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "chain2.poset", "--timings"]);
    let report = json(&out);
    assert!(report["posets"][0]["theorems"][0]["wall_time_ms"].is_number());
}

#[test]
fn out_flag_writes_the_report() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["check", "one.poset", "--out", "report.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["summary"]["posets"], 1);
}

#[test]
fn reconstruct_canonical_and_scrambled_tables() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["table", "chain3.poset", "--out", "t.json"]);
    assert_eq!(out.status.code(), Some(0));
    let out = flagalg(dir.path(), &["reconstruct", "t.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["covers"], serde_json::json!([[0, 1], [1, 2]]));
    assert_eq!(r["ranks"]["dim"], 10);

    let out = flagalg(dir.path(), &["--seed", "9", "table", "chain3.poset", "--scramble", "--out", "s.json"]);
    assert_eq!(out.status.code(), Some(0));
    let scrambled = std::fs::read_to_string(dir.path().join("s.json")).unwrap();
    assert_ne!(scrambled, std::fs::read_to_string(dir.path().join("t.json")).unwrap());
    let out = flagalg(dir.path(), &["reconstruct", "s.json", "--ring", "Q"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["elements"], 3);
    assert_eq!(r["covers"].as_array().unwrap().len(), 2);
    assert_eq!(flagalg(dir.path(), &["reconstruct", "s.json", "--ring", "Fp:5"]).status.code(), Some(2));
}

#[test]
fn reconstruct_rejects_non_flag_algebras() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["reconstruct", "nonflag.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "fail");
}

#[test]
fn reconstruct_over_z_is_a_capability_error() {
    let dir = workspace();
    flagalg(dir.path(), &["table", "chain2.poset", "--ring", "Z", "--out", "z.json"]);
    let out = flagalg(dir.path(), &["reconstruct", "z.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("field"));
}

#[test]
fn derivation_reports() {
    let dir = workspace();
    let out = flagalg(dir.path(), &["derivations", "chain2.poset", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["rank"], 0);
    assert_eq!(r["unknowns"], 16);
    assert_eq!(r["equations_before_pruning"], 64);

    let out = flagalg(dir.path(), &["derivations", "chain2.poset", "--n", "2"]);
    let r = json(&out);
    assert_eq!(r["rank"], 2);
    assert!(r["basis"].as_array().unwrap().iter().all(|b| b["leibniz_holds"] == true));

    let out = flagalg(dir.path(), &["derivations", "one.poset", "--n", "2"]);
    assert_eq!(json(&out)["rank"], 0);

    let out = flagalg(dir.path(), &["derivations", "chain2.poset", "--n", "4", "--ring", "Z"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["regime"], "unverified");
    assert!(String::from_utf8_lossy(&out.stderr).contains("unverified"));
}

#[test]
fn multiply_and_enumerate() {
    let dir = workspace();
    let f = r#"[[["a","a","a"],"1"],[["a","a","b"],"1"],[["a","b","b"],"1"]]"#;
    let out = flagalg(dir.path(), &["multiply", "chain2.poset", f, f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["product"],
        serde_json::json!([[["a", "a", "a"], "1"], [["a", "a", "b"], "2"], [["a", "b", "b"], "1"]])
    );
    let bad = flagalg(dir.path(), &["multiply", "chain2.poset", r#"[[["b","a","a"],"1"]]"#, f]);
    assert_eq!(bad.status.code(), Some(2));

    let counts: Vec<u64> = (1..=5)
        .map(|m| json(&flagalg(dir.path(), &["enumerate-posets", &m.to_string()]))["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [1, 2, 5, 16, 63]);
}
