use std::process::Command;

use grassbwb_cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv: Vec<&str> = args.to_vec();
    argv.extend(["--format", "json"]);
    let out = run(&argv);
    let v = serde_json::from_str(&out.output).unwrap_or(Value::Null);
    (out.code, v)
}

#[test]
fn bwb_bundle_expression() {
    let (code, v) = json(&["bwb", "--k", "2", "--n", "6", "--bundle", "wedge(2,sym(3,U)) * sym(2,U) * H(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["totals"], serde_json::json!({"4": 36}));
    let text = run(&["bwb", "--k", "2", "--n", "6", "--bundle", "wedge(2,sym(3,U)) * sym(2,U) * H(1)"]).output;
    let totals: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("degree")).collect();
    assert_eq!(totals, ["degree  dimension", "4       36"]);
}

#[test]
fn bwb_schur_expressions_and_twist() {
    let (code, v) = json(&["bwb", "--sub", "(0,-6) + (-1,-5) + 2(-2,-4)"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["totals"]["4"], 36);
    let (_, v) = json(&["bwb", "--quot", "(0,0,0,0)", "--twist", "1"]);
    assert_eq!(v["payload"]["totals"]["0"], 15);
}

#[test]
fn schubert_commands() {
    assert_eq!(run(&["schubert", "integrate", "s1^4 * classF"]).output, "108\n");
    assert_eq!(run(&["schubert", "mult", "s1", "s1"]).output, "σ_{1,1} + σ₂\n");
    let (_, v) = json(&["schubert", "integrate", r#"[{"partition":[2,2],"coeff":27},{"partition":[3,1],"coeff":18}]"#]);
    assert_eq!(v["payload"]["class"]["special"], "27σ₂² − 9σ₁σ₃ − 18σ₄");
    let (_, v) = json(&["schubert", "chern", "sym(3, dual(U))"]);
    assert_eq!(v["payload"]["chern"][4]["schubert"], "27σ_{2,2} + 18σ_{3,1}");
}

#[test]
fn decompose_representation() {
    let out = run(&["decompose", "--rank", "2", "wedge(2, sym(3, V)) * sym(2, V)"]);
    assert_eq!(out.output, "(7,1) ⊕ (6,2) ⊕ (5,3)^2\ndimension 18\n");
}

#[test]
fn deglocus_invariants() {
    let (code, v) = json(&["deglocus", "invariants"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["c2_C"], 495);
    assert_eq!(v["payload"]["chi_O"], 450);
}

#[test]
fn exactness_commands() {
    let page = r#"{"max_total_degree":4,"entries":[[-4,8,1134],[-3,8,126]]}"#;
    let (code, v) = json(&["exactness", "abut", "--page", page]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["abutment"], serde_json::json!({"forced": {"dims": {"4": 1008}}}));
    assert_eq!(run(&["exactness", "abut", "--page", page]).output, "Forced {4:1008}\n");
    let (code, v) = json(&["exactness", "les", "--a", "[0,0,0,null,null]", "--b", "[1,0,1,0,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["c"][0], serde_json::json!({"lo": 1, "hi": 1}));
}

#[test]
fn reproduce_check_passes() {
    let out = run(&["reproduce", "paper", "--check"]);
    assert_eq!(out.code, 0, "{}", out.output);
    assert!(out.output.ends_with("63 checks, 0 failed\n"));
    let (_, v) = json(&["reproduce", "paper"]);
    assert_eq!(v["payload"]["hodge"]["p_g"], 449);
}

#[test]
fn payload_is_byte_identical() {
    let args = ["reproduce", "paper"];
    let a = run(&args).envelope.unwrap();
    let b = run(&args).envelope.unwrap();
    assert_eq!(a.payload.to_string(), b.payload.to_string());
    let (_, v) = json(&args);
    assert_eq!(v["command"], serde_json::json!(["reproduce", "paper", "--format", "json"]));
    assert_eq!(v["format"], "json");
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["bwb"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    let bad = run(&["bwb", "--bundle", "sym(2, U*Q)"]);
    assert_eq!(bad.code, 1);
    assert!(bad.output.starts_with("error: parse error"), "{}", bad.output);
    assert_eq!(run(&["schubert", "integrate", "classF", "--n", "5"]).code, 1);
    assert_eq!(run(&["exactness", "abut", "--page", "{"]).code, 2);
}

#[test]
fn binary_honours_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_grassbwb"))
        .args(["schubert", "integrate", "s1^4 * classF"])
        .env("GRASSBWB_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "108\n");
    let out = Command::new(env!("CARGO_BIN_EXE_grassbwb")).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
