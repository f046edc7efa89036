use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (Value, i32, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_formwitt")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (json, code, out)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn isotropy_over_gf5_returns_a_witness() {
    let (v, code, _) = run(&["isotropy", "--ring", "GF(5)", "--form", "rank=3;c[1][2]=1;c[3][3]=1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "isotropic");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verified"], true);
    let w: Vec<u64> = strings(&v["witness"]).iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!((w[0] * w[1] + w[2] * w[2]) % 5, 0);
    assert!(w.iter().any(|&x| x != 0));
}

#[test]
fn descent_over_a_local_ring_reports_its_trace() {
    let (v, code, _) = run(&[
        "descend",
        "--ring",
        "GF(3)[X]/(X^2)",
        "--form",
        "rank=3;c[1][1]=1;c[2][2]=1;c[3][3]=1",
        "--ext",
        "X^3+2*X+1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "isotropic");
    assert_eq!(v["branch"], "semilocal-recursion");
    assert_eq!(v["trace"]["degrees"], serde_json::json!([3, 1]));
}

#[test]
fn descent_over_a_field() {
    let (v, code, _) = run(&[
        "descend",
        "--ring",
        "GF(5)",
        "--form",
        "rank=3;c[1][1]=1;c[2][2]=1;c[3][3]=2",
        "--ext",
        "X^3+X+1",
    ]);
    assert_eq!(code, 0);
    let w: Vec<u64> = strings(&v["witness"]).iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!((w[0] * w[0] + w[1] * w[1] + 2 * w[2] * w[2]) % 5, 0);
}

#[test]
fn characteristic_two_rank_one_is_nonsingular_but_not_regular() {
    let (v, code, _) = run(&["form", "check", "--ring", "GF(2)", "--form", "rank=1;c[1][1]=1"]);
    assert_eq!(code, 0);
    assert_eq!(v["regular"], false);
    assert_eq!(v["nonsingular"], true);
}

#[test]
fn bound_exhaustion_exits_with_two() {
    let (v, code, _) =
        run(&["isotropy", "--ring", "GF(7)", "--form", "rank=2;c[1][1]=1;c[2][2]=1", "--search-bound", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "unknown");
}

#[test]
fn bad_input_exits_with_one_and_a_position() {
    let (v, code, out) = run(&["isotropy", "--ring", "GF(5)", "--form", "rank=2;c[2][1]=1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 7"));
    let (_, code, _) = run(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn forms_can_be_read_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("form.txt");
    std::fs::write(&path, "rank=2;\nc[1][2]=1\n").unwrap();
    let arg = format!("@{}", path.display());
    let (v, code, _) = run(&["hyperbolic", "--ring", "GF(3)", "--form", &arg]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "hyperbolic");
}

#[test]
fn output_is_byte_stable() {
    let args = ["witt", "--ring", "GF(3)", "--form", "rank=3;c[1][1]=1;c[2][2]=2;c[3][3]=1"];
    let (_, _, a) = run(&args);
    let (_, _, b) = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rational_anisotropy_carries_a_local_certificate() {
    let (v, code, _) = run(&["isotropy", "--ring", "Q", "--form", "rank=3;c[1][1]=1;c[2][2]=1;c[3][3]=-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "anisotropic");
    assert_eq!(v["certificate"]["kind"], "local-obstruction");
}

#[test]
fn lifting_matches_given_residue_witnesses() {
    let (v, code, _) = run(&[
        "lift",
        "--ring",
        "GF(5)[X]/(X^2+3*X+2)",
        "--form",
        "rank=3;c[1][1]=1;c[2][2]=1;c[3][3]=3",
        "--residue-witness",
        "1;2;0",
        "--residue-witness",
        "1;3;0",
    ]);
    assert_eq!(code, 0, "{v}");
    for r in v["residues"].as_array().unwrap() {
        assert_eq!(r["reduces_exactly"], true);
    }
}

#[test]
fn selftest_runs_a_single_criterion() {
    let (v, code, _) = run(&["selftest", "--criterion", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["criteria"][0]["id"], 6);
}
