//! Command-level checks of the binary: schemas, exit codes, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(args)
        .env("TRI_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_emits_record() {
    let out = run(&["classify", "0.7", "0.7", "0.7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["region"], "R2");
    assert!((v["discriminant"].as_f64().unwrap() + 0.098).abs() < 1e-9);
    assert!((v["tmin_closed_form"].as_f64().unwrap() - 0.166812).abs() < 1e-5);

    let out = run(&["classify", "0.5", "0.5", "0.5"]);
    let v = stdout_json(&out);
    assert_eq!(v["region"], "outside_R");
    assert_eq!(v["tmin_closed_form"].as_f64().unwrap(), 0.0);
}

#[test]
fn classify_rejects_out_of_range() {
    let out = run(&["classify", "1.2", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_smoke_profile_and_expectations() {
    let out = run(&["search", "--profile", "2,2,2", "--expect", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["survivor_count"], 3);
    assert_eq!(v["scanned"], 4096);
    // Wrong expectation exits 1.
    let out = run(&["search", "--profile", "2,2,2", "--expect", "4"]);
    assert_eq!(out.status.code(), Some(1));
    // Profiles are sorted, other orderings accepted.
    let out = run(&["search", "--profile", "3,2,2", "--expect", "6"]);
    assert!(out.status.success());
}

#[test]
fn search_reports_are_byte_identical() {
    let a = run(&["search", "--profile", "2,2,3"]);
    let b = run(&["search", "--profile", "2,2,3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_reports_do_not_depend_on_worker_count() {
    let single = Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(["search", "--profile", "2,3,3", "--expect", "2"])
        .env("TRI_THREADS", "1")
        .output()
        .expect("binary runs");
    let pooled = Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(["search", "--profile", "2,3,3", "--expect", "2"])
        .env("TRI_THREADS", "4")
        .output()
        .expect("binary runs");
    assert!(single.status.success());
    assert!(pooled.status.success());
    assert_eq!(single.stdout, pooled.stdout);
}

#[test]
fn catalog_round_trips_and_complement_is_involution() {
    let out = run(&["catalog"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let graphs = v["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 8);
    for g in graphs {
        let enc = g["encoding"].as_str().unwrap();
        let comp = run(&["complement", enc]);
        assert!(comp.status.success());
        let comp_enc = String::from_utf8(comp.stdout).unwrap();
        let back = run(&["complement", comp_enc.trim()]);
        let back_enc = String::from_utf8(back.stdout).unwrap();
        assert_eq!(back_enc.trim(), enc);
    }
    let one = run(&["catalog", "h6"]);
    let v = stdout_json(&one);
    assert_eq!(
        v["graphs"][0]["encoding"],
        "t[2,2,2]AB=1101;AC=1011;BC=1101"
    );
}

#[test]
fn catalog_rejects_unknown_names() {
    let out = run(&["catalog", "h8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tmin_global_and_fixed_graph() {
    let out = run(&["tmin", "0.9", "0.9", "0.9", "--samples", "4"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["region"], "R1");
    assert!((v["value"].as_f64().unwrap() - 0.7).abs() < 1e-4);

    let out = run(&[
        "tmin",
        "0.7",
        "0.7",
        "0.7",
        "--graph",
        "t[2,2,2]AB=1101;AC=1011;BC=1101",
        "--samples",
        "8",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // The six-vertex topology cannot reach an R2 triple.
    assert_eq!(v["feasible"], false);

    let out = run(&["tmin", "0.7", "0.7", "0.7", "--graph", "t[bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_emits_csv_grid() {
    let out = run(&["sweep", "--grid", "3", "--samples", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha,beta,gamma,region,closed_form,numeric_min"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 27);
    for row in rows {
        assert_eq!(row.split(',').count(), 6);
    }
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = run(&["verify", "bounds", "--samples", "200", "--seed", "9"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["failures"], 0);

    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
