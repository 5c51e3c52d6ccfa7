use ruledsym_wasm_demo::{analyze_implicit, analyze_surface, corpus_surfaces, sample_mesh};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn corpus_listing_round_trips() {
    let v = parse(corpus_surfaces());
    let first = &v[0];
    let doc = first["surface"].to_string();
    let r = parse(analyze_surface(&doc, "all"));
    assert_eq!(r["count"], 1);
}

#[test]
fn surface_by_name() {
    let r = parse(analyze_surface("quadratic-scroll", "all"));
    assert_eq!(r["counts"]["axial"], 1);
    let e = parse(analyze_surface("quadratic-scroll", "sideways"));
    assert_eq!(e["error"]["code"], "INVALID_INPUT");
}

#[test]
fn implicit_equation() {
    let r = parse(analyze_implicit("x^3 - 27*y*z^2"));
    assert_eq!(r["count"], 4);
}

#[test]
fn mesh_keeps_pole_columns_as_null() {
    let doc = r#"{"p": ["1/t", "0", "0"], "q": ["0", "1", "t^2"]}"#;
    let r = parse(sample_mesh(doc, "-1,1", "0,1", 3, 2));
    let pts = r["points"].as_array().unwrap();
    assert_eq!(pts.len(), 6);
    assert!(pts[2].is_null() && pts[3].is_null());
    assert_eq!(pts[1], serde_json::json!([-1.0, 1.0, 1.0]));
}
