use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use bmtop_cli::format::ComplexFile;
use bmtop_core::complex::barycentric_subdivide;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn bmtop(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bmtop"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_reports_counts() {
    let r = bmtop(&["validate", &f("hollow_triangle.json")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "dim 0: 3, dim 1: 3\n"));
}

#[test]
fn validate_rejects_bad_input() {
    let r = bmtop(&["validate", &f("duplicate_vertex.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("duplicate vertex"));
    let r = bmtop(&["validate", &f("unknown_key.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("unknown field"));
    let r = bmtop(&["validate", "/nonexistent/complex.json"]);
    assert_eq!(r.code, 1);
}

#[test]
fn validate_empty_complex() {
    let r = bmtop(&["validate", &f("empty.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "empty complex\n");
}

#[test]
fn token_rules() {
    let dir = tempfile::tempdir().unwrap();
    let empty_token = write_temp(&dir, "a.json", r#"{"name": "x", "simplices": [["", "a"]]}"#);
    assert_eq!(bmtop(&["validate", &empty_token]).code, 1);
    let comma = write_temp(
        &dir,
        "b.json",
        r#"{"name": "x", "simplices": [["a,b", "c"]]}"#,
    );
    assert_eq!(bmtop(&["validate", &comma]).code, 1);
    let mixed = write_temp(
        &dir,
        "c.json",
        r#"{"name": "x", "simplices": [[1, "a"], ["a", "b"]]}"#,
    );
    let r = bmtop(&["validate", &mixed]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "dim 0: 3, dim 1: 2\n"));
}

#[test]
fn homology_lines() {
    let r = bmtop(&["homology", &f("rp2.json")]);
    assert_eq!(r.stdout, "H_0 = Z^1\nH_1 = Z/2\nH_2 = 0\n");
    let r = bmtop(&["homology", &f("torus.json")]);
    assert!(r.stdout.contains("H_1 = Z^2\n"));
    let r = bmtop(&[
        "homology",
        &f("interval.json"),
        "--rel",
        &f("interval_ends.json"),
    ]);
    assert_eq!(r.stdout, "H_0 = 0\nH_1 = Z^1\n");
    let r = bmtop(&[
        "homology",
        &f("interval.json"),
        "--rel",
        &f("interval_ends.json"),
        "--bm",
    ]);
    assert_eq!(r.stdout, "H^BM_0 = 0\nH^BM_1 = Z^1\n");
    let r = bmtop(&[
        "homology",
        &f("torus.json"),
        "--rel",
        &f("interval_ends.json"),
    ]);
    assert_eq!(r.code, 1);
}

#[test]
fn cup_examples() {
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &f("u_12.json"),
        "--v",
        &f("u_23.json"),
    ]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "[1,2,3]\n"));
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &f("u_zero.json"),
        "--v",
        &f("u_23.json"),
    ]);
    assert_eq!(r.stdout, "0\n");
    let dir = tempfile::tempdir().unwrap();
    let unit = write_temp(
        &dir,
        "one.json",
        r#"{"degree": 0, "values": {"1": 2, "2": 5}}"#,
    );
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &unit,
        "--v",
        &f("u_23.json"),
    ]);
    // (u∪v)(σ) = u(first vertex)·v(σ)
    assert_eq!(r.stdout, "5·[2,3]\n");
}

#[test]
fn cochain_keys_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let wrong_dim = write_temp(&dir, "u.json", r#"{"degree": 1, "values": {"1,2,3": 1}}"#);
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &wrong_dim,
        "--v",
        &f("u_23.json"),
    ]);
    assert_eq!(r.code, 1);
    let decreasing = write_temp(&dir, "v.json", r#"{"degree": 1, "values": {"2,1": 1}}"#);
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &decreasing,
        "--v",
        &f("u_23.json"),
    ]);
    assert_eq!(r.code, 1);
    let extra = write_temp(&dir, "w.json", r#"{"degree": 1, "values": {}, "note": 1}"#);
    let r = bmtop(&[
        "cup",
        &f("triangle.json"),
        "--u",
        &extra,
        "--v",
        &f("u_23.json"),
    ]);
    assert_eq!(r.code, 1);
}

fn cap(cochain: &str, chain: &str, extra: &[&str]) -> Run {
    let (u, a) = (f(cochain), f(chain));
    let mut args = vec!["cap", "", "--cochain", &u, "--chain", &a];
    let x = f("hollow_triangle.json");
    args[1] = &x;
    args.extend_from_slice(extra);
    bmtop(&args)
}

#[test]
fn supported_cap_example() {
    let z = f("vertex1.json");
    let r = cap("u_12.json", "alpha_cycle.json", &["--support", &z]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        r.stdout,
        "chain: [2]\nstar: [1,2] [1,3]\nclass: 1·g0 in H_0(Z) = Z\n"
    );
    let r = cap("u_zero.json", "alpha_cycle.json", &["--support", &z]);
    assert!(r.stdout.starts_with("chain: 0\n"));
    assert!(r.stdout.ends_with("class: 0 in H_0(Z) = Z\n"));
}

#[test]
fn cap_errors() {
    let z = f("vertex1.json");
    let r = cap("u_12.json", "alpha_vertex.json", &["--support", &z]);
    assert_eq!(r.code, 1);
    let r = cap("u_23.json", "alpha_cycle.json", &["--support", &z]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("does not vanish"), "{}", r.stderr);
}

#[test]
fn retract_failure_asks_for_presubdivision() {
    let dir = tempfile::tempdir().unwrap();
    // two vertices whose stars cover the circle: H_0(Z) = Z^2 but H_0(N) = Z
    let z = write_temp(&dir, "z.json", r#"{"name": "Z", "simplices": [[1], [3]]}"#);
    let r = cap("u_12.json", "alpha_cycle.json", &["--support", &z]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("increase --presubdivide"), "{}", r.stderr);
}

#[test]
fn relative_cap_on_interval() {
    let r = bmtop(&[
        "cap",
        &f("interval.json"),
        "--cochain",
        &f("u_am.json"),
        "--chain",
        &f("alpha_interval.json"),
        "--support",
        &f("interval_mid.json"),
        "--rel",
        &f("interval_ends.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("chain: [m]\n"));
    assert!(r.stdout.ends_with("class: 1·g0 in H_0(Z, Z∩Y) = Z\n"));
}

#[test]
fn presubdivided_cap_keeps_the_class() {
    let z = f("vertex1.json");
    let r = cap(
        "u_12.json",
        "alpha_cycle.json",
        &["--support", &z, "--presubdivide", "1"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("class: 1·g0 in H_0(Z) = Z\n"));
}

#[test]
fn subdivision_round_trip() {
    let r = bmtop(&["subdivide", &f("triangle.json")]);
    assert_eq!(r.code, 0);
    let parsed: ComplexFile = serde_json::from_str(&r.stdout).unwrap();
    let complex = parsed.to_complex().unwrap();
    assert_eq!(complex.vertex_count(), 7);
    let original = Arc::new(
        serde_json::from_str::<ComplexFile>(
            &std::fs::read_to_string(fixture("triangle.json")).unwrap(),
        )
        .unwrap()
        .to_complex()
        .unwrap(),
    );
    let sd = barycentric_subdivide(&original).unwrap();
    assert_eq!(complex, *sd.complex);
    assert_eq!(ComplexFile::from_complex(&complex), parsed);

    // feeding the output back in is stable
    let dir = tempfile::tempdir().unwrap();
    let again = write_temp(&dir, "sd.json", &r.stdout);
    assert_eq!(
        bmtop(&["subdivide", &again, "--times", "0"]).stdout,
        r.stdout
    );
}

#[test]
fn subdivide_edge_cases() {
    let r = bmtop(&["subdivide", &f("hollow_triangle.json"), "--times", "0"]);
    let parsed: ComplexFile = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(parsed.simplices.len(), 3);
    let r = bmtop(&["subdivide", &f("empty.json"), "--times", "2"]);
    let parsed: ComplexFile = serde_json::from_str(&r.stdout).unwrap();
    assert!(parsed.simplices.is_empty());
    let r = bmtop(&["subdivide", &f("triangle.json"), "--times", "2"]);
    let parsed: ComplexFile = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(parsed.simplices.len(), 36);
}

#[test]
fn verify_torus_passes_and_is_deterministic() {
    let args = ["verify", &f("torus.json"), "--seed", "1", "--trials", "100"];
    let first = bmtop(&args);
    assert_eq!(first.code, 0, "{}", first.stdout);
    assert!(first.stdout.lines().all(|l| l.starts_with("PASS ")));
    assert!(first.stdout.contains("PASS d∘d=0\n"));
    assert_eq!(bmtop(&args).stdout, first.stdout);
}

#[test]
fn verify_detects_corruption() {
    let r = bmtop(&[
        "verify",
        &f("triangle.json"),
        "--trials",
        "5",
        "--corrupt-boundary",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("FAIL d∘d=0\n"));
}

#[test]
fn verify_empty_is_vacuous() {
    let r = bmtop(&["verify", &f("empty.json")]);
    assert_eq!(r.code, 0);
    assert!(!r.stdout.contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bmtop(&["homology"]).code, 1);
    assert_eq!(bmtop(&["frobnicate"]).code, 1);
    assert_eq!(bmtop(&["--help"]).code, 0);
}
