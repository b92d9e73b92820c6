use izlab_wasm::{analyze_algebra, check_identity, enumerate_variety};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_boolean_implication() {
    let v = parse(analyze_algebra("2\n1 1\n0 1").unwrap());
    assert_eq!(v["prime"], serde_json::json!([1, 0]));
    assert_eq!(v["derived"]["meet"], serde_json::json!([[0, 0], [0, 1]]));
    assert_eq!(v["derived"]["join"], serde_json::json!([[0, 1], [1, 1]]));
    assert_eq!(v["report"]["in_S"], true);
    assert!(v["defining"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d["witness"].is_null()));
}

#[test]
fn analyze_reports_a_defining_failure() {
    let v = parse(analyze_algebra(r#"{"size":2,"table":[[1,0],[0,0]]}"#).unwrap());
    assert_eq!(v["report"]["in_I"], false);
    assert_eq!(
        v["defining"][0]["witness"],
        serde_json::json!({"assignment": {"x": 1, "y": 0, "z": 0}, "lhs": 1, "rhs": 0})
    );
}

#[test]
fn check_holds_and_fails() {
    let ok = parse(check_identity("[[0]]", "x = y").unwrap());
    assert_eq!(ok["holds"], true);
    let bad = parse(check_identity("2\n1 1\n0 1", "x -> y = y -> x").unwrap());
    assert_eq!(bad["holds"], false);
    assert!(bad["witness"].is_object());
}

#[test]
fn malformed_input_is_an_error() {
    assert!(check_identity("[[0]]", "x = ").is_err());
    assert!(analyze_algebra("not a table").is_err());
    assert!(enumerate_variety(9, "i").is_err());
    assert!(enumerate_variety(2, "boolean").is_err());
}

#[test]
fn enumerate_counts() {
    for (size, variety, count) in [(2, "i", 3), (3, "i20", 5), (3, "s", 3), (4, "is", 26)] {
        let v = parse(enumerate_variety(size, variety).unwrap());
        assert_eq!(v["complete"], true);
        assert_eq!(
            v["algebras"].as_array().unwrap().len(),
            count,
            "{variety} at {size}"
        );
    }
}
