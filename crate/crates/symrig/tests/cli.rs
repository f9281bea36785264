mod common;

use common::{fixture_path, run_cli};
use serde_json::{json, Value};

fn path(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

fn json_of(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap()
}

#[test]
fn analyze_reports_isostatic_class() {
    let (code, out, _) = run_cli(&["analyze", &path("k33_phi_a")]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    let class = &v["classes"][0];
    assert_eq!(class["isostatic"], json!(true));
    assert_eq!(class["evidence"]["isostatic"], json!("certified"));
    assert_eq!(class["k"], json!(6));
    assert_eq!(v["framework"]["rigidity"]["isostatic"], json!(true));
}

#[test]
fn analyze_labels_negative_verdicts_as_probabilistic() {
    let (code, out, _) = run_cli(&["analyze", &path("k33_phi_b"), "--trials", "7"]);
    assert_eq!(code, 0);
    let class = &json_of(&out)["classes"][0];
    assert_eq!(class["rigid"], json!(false));
    assert_eq!(class["evidence"]["rigid"], json!("no witness in 7 trials"));
    assert_eq!(class["ranks"].as_array().unwrap().len(), 7);
}

#[test]
fn empty_check_reports_the_collapsing_edge() {
    let (code, out, _) = run_cli(&["empty-check", &path("k2_c2_identity")]);
    assert_eq!(code, 0);
    assert_eq!(
        json_of(&out),
        json!({"empty": true, "edges": [["v1", "v2"]]})
    );
}

#[test]
fn types_of_two_triangles() {
    let (code, out, _) = run_cli(&["types", &path("gt_c2"), "--normalized"]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["count"], json!(2));
    assert_eq!(v["types"][0]["type"]["C2"], json!("(v1 v2)"));
    assert_eq!(v["types"][1]["type"]["C2"], json!("(v1 v2)(v3 v4)"));
    assert_eq!(v["coincidence_group"], json!(["id", "(v3 v4)"]));
    let (_, out, _) = run_cli(&["types", &path("gt_c2")]);
    assert_eq!(json_of(&out)["count"], json!(4));
}

#[test]
fn basis_and_sample() {
    let (code, out, _) = run_cli(&["basis", &path("k33_phi_a")]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["k"], json!(6));
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);

    let (code, out, _) = run_cli(&["sample", &path("k3_c2_swap"), "--trials", "3"]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    for s in v["samples"].as_array().unwrap() {
        assert_eq!(s["v3"], json!([0.0, 0.0]));
    }
}

#[test]
fn exit_codes() {
    let (code, out, err) = run_cli(&["sample", &path("k2_c2_identity")]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    let e = json_of(&err);
    assert_eq!(e["kind"], json!("domain"));
    assert!(e["error"].as_str().unwrap().contains("{v1, v2}"));

    let (code, _, err) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(json_of(&err)["kind"], json!("usage"));

    let (code, _, err) = run_cli(&["analyze", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
    assert!(json_of(&err)["error"].is_string());

    let (code, _, _) = run_cli(&["sample", &path("gt_c2")]);
    assert_eq!(code, 2);

    let (code, _, _) = run_cli(&["analyze", &path("k33_phi_a"), "--tol-rank", "-1"]);
    assert_eq!(code, 2);

    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("empty-check"));
}

#[test]
fn bad_problem_files_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("symrig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("loop.json");
    std::fs::write(
        &file,
        r#"{"graph": {"vertices": ["v1"], "edges": [["v1", "v1"]]}, "dimension": 2, "group": {"schoenflies": "C1"}, "seed": 0}"#,
    )
    .unwrap();
    let (code, _, err) = run_cli(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(json_of(&err)["kind"], json!("self_loop"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixed_seed_output_is_byte_identical() {
    for args in [
        vec!["analyze", "k33_phi_a"],
        vec!["sample", "gtp_psi_a"],
        vec!["types", "c9_c3"],
        vec!["basis", "k4_upsilon_a"],
        vec!["svg", "gbp_xi_b"],
        vec!["oracle", "k3_c2_swap"],
    ] {
        let p = path(args[1]);
        let first = run_cli(&[args[0], &p, "--seed", "99"]);
        let second = run_cli(&[args[0], &p, "--seed", "99"]);
        assert_eq!(first, second, "{args:?}");
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
    }
    let a = run_cli(&["sample", &path("gtp_psi_a"), "--seed", "1"]).1;
    let b = run_cli(&["sample", &path("gtp_psi_a"), "--seed", "2"]).1;
    assert_ne!(a, b);
}

#[test]
fn svg_goes_to_out_file() {
    let out = std::env::temp_dir().join(format!("symrig-svg-{}.svg", std::process::id()));
    let (code, stdout, _) =
        run_cli(&["svg", &path("k4_upsilon_a"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.matches("<line").count(), 6);
    assert_eq!(text.matches("<circle").count(), 4);
    assert_eq!(text.matches("class=\"mirror\"").count(), 1);
    std::fs::remove_file(out).unwrap();
}

#[test]
fn oracle_subcommand_agrees() {
    let (code, out, _) = run_cli(&["oracle", &path("k33_phi_a")]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["types"]["agree"], json!(true));
    assert_eq!(v["kernel"]["exact_k"], json!(6));
    assert_eq!(v["kernel"]["agree"], json!(true));
    let (_, out, _) = run_cli(&["oracle", &path("k3_c2_swap")]);
    assert_eq!(json_of(&out)["generic"]["generic"], json!(true));
}
