//! Runs the built `qact` binary over the shipped data.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn qact(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qact")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, String::from_utf8(out.stderr).unwrap())
}

fn passes(args: &[&str]) -> Value {
    let (code, r, err) = qact(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    assert_eq!(r["pass"], true);
    r
}

#[test]
fn hopf_commands_pass_on_builders() {
    for f in ["group_s3.json", "functions_s3.json", "delta_group_z3.json"] {
        for cmd in ["verify-hopf", "haar", "dual", "irreps", "q-matrix"] {
            passes(&[cmd, &data(f)]);
        }
    }
}

#[test]
fn coaction_commands_pass_on_shipped_coactions() {
    for f in ["delta_group_z3.json", "adjoint_m2.json", "twist_z2z2.json", "swap_z2.json", "trivial_z2.json", "restriction_s3_z3.json"] {
        for cmd in ["coaction-verify", "fixed-points", "isotypes", "free-check", "torsor-check", "crossed", "tt-check"] {
            passes(&[cmd, &data(f)]);
        }
    }
}

#[test]
fn homogeneous_commands_refuse_the_restriction() {
    // C(S3) ⟵ Z3 has a two-dimensional fixed-point algebra
    let (code, r, err) = qact(&["stabilize", &data("restriction_s3_z3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    assert!(err.contains("homogeneous"), "{err}");
    passes(&["stabilize", &data("adjoint_m2.json")]);
    passes(&["fusion", &data("adjoint_m2.json")]);
    passes(&["homog-data", &data("adjoint_m2.json")]);
}

#[test]
fn free_check_reports_the_adjoint_action_as_not_free() {
    let r = passes(&["free-check", &data("adjoint_m2.json")]);
    assert_eq!(r["data"]["free"], false);
    let r = passes(&["free-check", &data("swap_z2.json")]);
    assert_eq!(r["data"]["free"], true);
}

#[test]
fn module_commands() {
    let r = passes(&["smash", &data("conjugation_s3.json")]);
    assert_eq!(r["data"]["dim"], 36);
    passes(&["smash", &data("swap_z2.json")]);
    passes(&["tt-check", &data("conjugation_s3.json")]);
}

#[test]
fn twist_and_reflect() {
    let r = passes(&["twist", &data("twist_z3z3.json")]);
    assert_eq!(r["data"]["blocks"], serde_json::json!([3]));
    passes(&["reflect", &data("twist_z2z2.json"), "--against", "C[Z2xZ2]^cop"]);
    let (code, _, _) = qact(&["reflect", &data("adjoint_m2.json")]);
    assert_eq!(code, 1);
}

#[test]
fn walk_commands() {
    for f in ["walk_loop_pair.json", "walk_quotient_n4.json", "walk_podles.json", "walk_k3.json"] {
        passes(&["walk", "verify", &data(f)]);
        passes(&["walk", "norm", &data(f)]);
        passes(&["walk", "fusion", &data(f), "--up-to", "1.5"]);
    }
    let r = passes(&["walk", "perron", &data("graph_k3.json")]);
    assert_eq!(r["data"]["delta"], 2.0);
    passes(&["walk", "chain", "--kind", "podles", "--q", "0.5", "--x", "0"]);
    passes(&["walk", "chain", "--kind", "torsor", "--param", &data("f_su_half.json")]);
}

#[test]
fn oplus_and_podles() {
    let r = passes(&["oplus", "c", &data("f_o3.json")]);
    assert_eq!(r["data"]["c_matrix"], 3.0);
    let r = passes(&["oplus", "moneq", &data("f_su_quarter.json"), &data("f_matrix_su_quarter.json")]);
    assert_eq!(r["data"]["equivalent"], true);
    let r = passes(&["podles", "morita", "--x", "0.2", "--y", "-0.3"]);
    assert_eq!(r["data"]["equivalent"], false);
    passes(&["podles", "presentation", "--q", "0.5", "--x", "0"]);
    passes(&["emit-presentation", "--target", "walk", "--walk", &data("walk_loop_pair.json"), "--param", &data("f_su_minus_half.json")]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qact(&["haar"]).0, 2);
    assert_eq!(qact(&["haar", "/no/such/file.json"]).0, 2);
    assert_eq!(qact(&["haar", &data("walk_k3.json")]).0, 2);
    assert_eq!(qact(&["walk", "chain", "--kind", "podles"]).0, 2);
}

#[test]
fn output_is_deterministic_up_to_timing() {
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v
    };
    let args = ["--seed", "3", "irreps", &data("functions_s3.json")];
    assert_eq!(strip(qact(&args).1), strip(qact(&args).1));
}
