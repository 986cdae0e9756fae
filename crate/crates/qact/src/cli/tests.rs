use super::*;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn qact(args: &[&str]) -> Outcome {
    run(std::iter::once("qact").chain(args.iter().copied()))
}

#[test]
fn quotient_chain_weights_come_in_figure_order() {
    let out = qact(&["walk", "chain", "--kind", "oplus-quotient", "--N", "4", "--L", "6"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = out.report.unwrap();
    let w: Vec<f64> = r.data["walk"]["edges"].as_array().unwrap().iter().map(|e| e["w"].as_f64().unwrap()).collect();
    for (got, want) in w.iter().zip([1.0, 3.0, 1.0 / 3.0, 8.0 / 3.0]) {
        assert!((got - want).abs() < 1e-12, "{w:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qact(&["verify-hopf", &data("group_s3.json")]).code, 0);
    // not a torsor: the computation refuses
    assert_eq!(qact(&["reflect", &data("trivial_z2.json")]).code, 1);
    assert_eq!(qact(&["verify-hopf", "/nonexistent.json"]).code, 2);
    assert_eq!(qact(&["walk", "chain", "--kind", "torsor"]).code, 2);
    assert_eq!(qact(&["no-such-command"]).code, 2);
    assert_eq!(qact(&["--help"]).code, 0);
}

#[test]
fn failed_check_names_the_first_failure() {
    let out = qact(&["emit-presentation", "--target", "walk", "--walk", &data("walk_loop_pair.json"), "--param", &data("f_su_half.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("does not match"), "{}", out.stderr);
    assert!(!out.report.unwrap().pass);
}

#[test]
fn report_records_inputs_seed_and_tolerance() {
    let out = qact(&["--seed", "7", "--tol", "1e-10", "haar", &data("functions_s3.json")]);
    let r = out.report.unwrap();
    assert_eq!(r.seed, 7);
    assert_eq!(r.tol, 1e-10);
    assert_eq!(r.inputs.len(), 1);
    assert_eq!(r.inputs[0].hash.len(), 64);
    let parsed: RunReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(parsed, r);
}

#[test]
fn repeated_runs_agree_apart_from_timing() {
    let args = ["stabilize", &data("adjoint_m2.json")];
    let mut a = qact(&args).report.unwrap();
    let mut b = qact(&args).report.unwrap();
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn text_format_lists_checks() {
    let out = qact(&["--format", "text", "free-check", &data("swap_z2.json")]);
    assert!(out.stdout.starts_with("free-check: pass"));
    assert!(out.stdout.contains("ellwood_galois_agree"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("qact-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = qact(&["--out", path.to_str().unwrap(), "oplus", "c", &data("f_o3.json")]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out.stdout);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn name_selects_among_several_objects() {
    let out = qact(&["verify-hopf", &data("twist_z2z2.json"), "--name", "C[Z2xZ2]^cop"]);
    assert_eq!(out.report.unwrap().data["hopf"], "C[Z2xZ2]^cop");
    assert_eq!(qact(&["verify-hopf", &data("twist_z2z2.json"), "--name", "nope"]).code, 2);
}
