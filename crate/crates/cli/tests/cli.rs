mod common;

use common::*;
use serde_json::json;

fn s(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zeta_of_simple_over_dual_numbers() {
    let (code, v) = relaus_json(&["zeta", "--algebra", s(&data("lambda2.json")), "--module", s(&data("lambda2_S.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["dims"], json!([1, 2, 1, 2, 1]));
    assert_eq!(v["report"]["certificate"]["k_in_mod0"], json!(true));
}

#[test]
fn dual_numbers_give_tilting_and_cotilting() {
    let (code, v) = relaus_json(&["check-tilting", "--algebra", s(&data("lambda2.json")), "--catalog", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "both");
    for c in v["conclusions"].as_array().unwrap() {
        assert_eq!(c["provenance"], "verified");
    }
}

#[test]
fn a2_is_cm_free() {
    let (code, v) = relaus_json(&["gprj-pipeline", "--algebra", s(&data("kA2.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["cm_free"], json!(true));
    assert_eq!(v["report"]["gorenstein"]["gdim"], json!({"kind": "finite", "value": 1}));
}

#[test]
fn budgets_always_recorded() {
    let (_, v) = relaus_json(&["gorenstein", "--algebra", s(&data("kA2.json"))]);
    assert_eq!(v["flags"]["max_dim"], 8);
    assert_eq!(v["flags"]["max_steps"], 10000);
    assert_eq!(v["flags"]["ext_bound"], 6);
    assert!(v["timing"]["elapsed_ms"].is_number());
}

#[test]
fn non_intertwining_module_is_rejected() {
    let bad = scratch("bad_module.json");
    let (_, v) = relaus_json(&["indecomposables", "--algebra", s(&data("lambda2.json"))]);
    let digest = v["report"]["modules"][0]["algebra_digest"].as_str().unwrap().to_string();
    let m = json!({ "algebra_digest": digest, "spaces": {"1": 1}, "arrows": {"x": [["1"]]} });
    std::fs::write(&bad, m.to_string()).unwrap();
    let (code, _, err) = relaus(&["zeta", "--algebra", s(&data("lambda2.json")), "--module", s(&bad)]);
    assert_eq!(code, 4);
    assert!(err.contains("relations at"), "{err}");

    let wrong = json!({ "algebra_digest": "00", "spaces": {"1": 1}, "arrows": {"x": [["0"]]} });
    std::fs::write(&bad, wrong.to_string()).unwrap();
    let (code, _, err) = relaus(&["zeta", "--algebra", s(&data("lambda2.json")), "--module", s(&bad)]);
    assert_eq!(code, 4);
    assert!(err.contains("algebra_digest"), "{err}");
}

#[test]
fn malformed_algebras_are_input_errors() {
    let path = scratch("bad_algebra.json");
    let cases = [
        (json!({"field": {"kind": "prime", "p": 4}, "quiver": {"vertices": ["1"], "arrows": []}, "relations": [], "nilpotency_bound": 1}), "field.p"),
        (json!({"field": {"kind": "rational"}, "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]}, "relations": [[{"coeff": "1", "path": ["x", "y"]}]], "nilpotency_bound": 2}), "y"),
        (json!({"field": {"kind": "rational"}, "quiver": {"vertices": ["1"]}, "relations": [], "nilpotency_bound": 1}), "line"),
    ];
    for (alg, needle) in cases {
        std::fs::write(&path, alg.to_string()).unwrap();
        let (code, _, err) = relaus(&["gorenstein", "--algebra", s(&path)]);
        assert_eq!(code, 4, "{err}");
        assert!(err.contains(needle), "{needle}: {err}");
    }
}

#[test]
fn acyclic_quiver_without_relations() {
    let path = scratch("path_algebra.json");
    let alg = json!({"field": {"kind": "rational"}, "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}, "relations": [], "nilpotency_bound": 2});
    std::fs::write(&path, alg.to_string()).unwrap();
    let (code, v) = relaus_json(&["indecomposables", "--algebra", s(&path)]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["size"], 3);
}

#[test]
fn exported_catalog_round_trips() {
    let cat = scratch("square_catalog.json");
    let alg = data("square.json");
    let (code, _) = relaus_json(&["indecomposables", "--algebra", s(&alg), "--export", s(&cat)]);
    assert_eq!(code, 0);
    let (_, auto) = relaus_json(&["auslander", "--algebra", s(&alg)]);
    let (code, file) = relaus_json(&["auslander", "--algebra", s(&alg), "--catalog", s(&cat)]);
    assert_eq!(code, 0);
    assert_eq!(auto["report"]["gamma"]["structure_digest"], file["report"]["gamma"]["structure_digest"]);
    assert_eq!(file["report"]["catalog"]["method"], "supplied");
}

#[test]
fn bounded_mode_over_a_prime_field() {
    let (code, v) = relaus_json(&["indecomposables", "--algebra", s(&data("lambda3_f2.json")), "--mode", "bounded", "--max-dim", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["size"], 3);
    assert_eq!(v["report"]["complete"], false);
    let (code, _, _) = relaus(&["indecomposables", "--algebra", s(&data("lambda3.json")), "--mode", "bounded"]);
    assert_eq!(code, 4);
}

#[test]
fn negative_verdicts_exit_with_two() {
    // X is all of mod kA2 here, which is not left perpendicular to the algebra
    let (code, v) = relaus_json(&["check-tilting", "--algebra", s(&data("kA2.json"))]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["flags"]["left_perp"]["status"], "failed");
}

#[test]
fn markdown_summary() {
    let (code, out, _) = relaus(&["morita-compare", "--algebra", s(&data("lambda2.json")), "--algebra2", s(&data("lambda3.json")), "--markdown"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# relaus morita-compare"));
    assert!(out.contains("verdict: **distinguished**"));
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("cert.json");
    let (code, stdout, _) = relaus(&["gorenstein", "--algebra", s(&data("lambda2.json")), "--out", s(&path)]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "Gorenstein dimension 0");
}
