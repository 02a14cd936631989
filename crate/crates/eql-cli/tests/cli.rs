//! End-to-end checks of the command-line surface: JSON shapes, exit codes,
//! and file round trips.

use std::process::{Command, Output};

fn eql(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eql"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn enumerate_x_counts() {
    let v = stdout_json(&eql(&["enumerate-x"]));
    assert_eq!(v["total"], 1152);
    assert_eq!(v["v1"], 450);
    assert_eq!(v["vm1"], 450);
    assert_eq!(v["v5"], 252);
    assert_eq!(v["labels"].as_array().unwrap().len(), 1152);
}

#[test]
fn dual_short_certificate() {
    let v = stdout_json(&eql(&["dual-short", "--bound", "3"]));
    assert_eq!(v["count"], 1152);
    assert_eq!(v["outside_lambda"], 0);
    assert_eq!(v["min_norm_outside_lambda"], "7/2");
    let empty = stdout_json(&eql(&["dual-short", "--bound", "2"]));
    assert_eq!(empty["count"], 0);
}

#[test]
fn coset_minima_table() {
    let v = stdout_json(&eql(&["coset-minima", "--n", "9"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert_eq!(rows[3]["formula"], "21/10");
    assert_eq!(rows[5]["vectors_at_min"], 252);
}

#[test]
fn psi0_verifies() {
    let v = stdout_json(&eql(&["psi0", "--verify"]));
    assert_eq!(v["is_aes"], true);
    assert_eq!(v["clique"]["vertices"].as_array().unwrap().len(), 12);
}

#[test]
fn build_verify_seidel_roundtrip() {
    let dir = std::env::temp_dir().join("eql-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("example1.json");
    let path_str = path.to_str().unwrap();

    let out = eql(&[
        "--out",
        path_str,
        "build-aes",
        "--x5",
        "psi0",
        "--slots",
        "H1,H2,H3,H4,H5,H6,H7,H8,H9,-",
    ]);
    assert!(out.status.success());

    let v = stdout_json(&eql(&["verify", "--aes", path_str, "--strong"]));
    assert_eq!(v["size"], 57);
    assert_eq!(v["is_aes"], true);
    assert_eq!(v["generates_lambda"], true);
    assert_eq!(v["certificate"]["verdict"], true);
    assert_eq!(v["certificate"]["dual_shorts_examined"], 1152);

    let s = stdout_json(&eql(&["seidel", "--aes", path_str, "--analyze"]));
    assert_eq!(s["mult5"], 39);
    assert_eq!(s["dimension"], 18);
    assert_eq!(s["distinct_eigs"], 6);
    let by_example = stdout_json(&eql(&["seidel", "--example", "1"]));
    assert_eq!(by_example["charpoly"], s["charpoly"]);
}

#[test]
fn stabilizer_check_on_reference_element() {
    let dir = std::env::temp_dir().join("eql-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stab.json");
    let path_str = path.to_str().unwrap();
    assert!(eql(&[
        "--out",
        path_str,
        "build-aes",
        "--slots",
        "H1,H8,H9,-,H2,H3,H4,H7,H6,H5",
    ])
    .status
    .success());
    let v = stdout_json(&eql(&[
        "orbits",
        "--stabilizer-check",
        "--aes",
        path_str,
        "--sigma1",
        "(1,2)(5,8)(6,9)(7,10)",
        "--sigma2",
        "(1,8)(2,7)(3,6)(4,5)",
    ]));
    assert_eq!(v["stabilizes_exactly"], true);
}

#[test]
fn reproduce_appendix_passes() {
    let out = eql(&["reproduce", "--appendix", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("checks passed"));
    assert!(text.contains(r#""pass":true"#));
}

#[test]
fn build_from_coloring_file_matches_slots() {
    let dir = std::env::temp_dir().join("eql-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let coloring_path = dir.join("coloring.json");
    std::fs::write(
        &coloring_path,
        serde_json::to_string(&eql_core::report::example_coloring(1)).unwrap(),
    )
    .unwrap();
    let from_file = stdout_json(&eql(&[
        "build-aes",
        "--coloring",
        coloring_path.to_str().unwrap(),
    ]));
    let from_slots = stdout_json(&eql(&[
        "build-aes",
        "--slots",
        "H1,H2,H3,H4,H5,H6,H7,H8,H9,-",
    ]));
    assert_eq!(from_file, from_slots);
}

#[test]
fn output_is_deterministic() {
    let a = eql(&["enumerate-x"]);
    let b = eql(&["enumerate-x"]);
    assert_eq!(a.stdout, b.stdout);
    let a = eql(&["psi0", "--verify"]);
    let b = eql(&["psi0", "--verify"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    let out = eql(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eql(&["dual-short", "--bound", "x/y"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eql(&["verify", "--aes", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eql(&["reproduce"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_failures_exit_with_one() {
    // a valid 2-vector set is equiangular but fails --strong
    let dir = std::env::temp_dir().join("eql-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("small.json");
    std::fs::write(
        &path,
        r#"{"root":"r","vectors":[{"kind":"v5","set":[1,2,3,4,5]},{"kind":"v5","set":[1,2,3,6,7]}]}"#,
    )
    .unwrap();
    let out = eql(&["verify", "--aes", path.to_str().unwrap(), "--strong"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["verdict"], false);
    assert_eq!(v["certificate"]["generates_lambda"], false);
}
