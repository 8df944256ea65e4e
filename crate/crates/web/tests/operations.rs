use serde_json::Value;
use transverse_web::{golod_series_json, obstruction_table_json, star_resolution_json};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn star_resolution_of_the_flagship_pair() {
    let v = parse(star_resolution_json("x1 x2 x3 x4", "x1, x2", "x3, x4"));
    assert_eq!(v["totals"], serde_json::json!([1, 4, 4, 1]));
    assert_eq!(v["resolves"], true);
    assert_eq!(v["transverse"], true);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn star_resolution_reports_the_witness() {
    let v = parse(star_resolution_json("x1,x2", "x1,x2", "x1,x2"));
    assert_eq!(v["transverse"], false);
    assert_eq!(v["witness"], "x1");
    assert_eq!(v["resolves"], false);
    assert_eq!(v["failure"], "H_1 has dimension 1 in degree 2");
}

#[test]
fn golod_series_of_the_flagship_pair() {
    let v = parse(golod_series_json("x1 x2 x3 x4", "x1 x2", "x3 x4", 5));
    assert_eq!(
        v["coefficients"],
        serde_json::json!([1, 4, 10, 24, 58, 140])
    );
    assert_eq!(v["certified_ranks"], serde_json::json!([1, 4, 10, 24, 58]));
    assert_eq!(v["certified"], true);
}

#[test]
fn obstruction_table_for_the_counterexample() {
    let v = parse(obstruction_table_json(
        "x1 x2 x3 x4",
        "x1^2, x1*x2, x2*x3, x3*x4, x4^2",
        "x1^2, x4^2",
    ));
    assert_eq!(v["first_nonzero"], 4);
    assert_eq!(v["well_defined"], true);
}

#[test]
fn bad_input_is_reported() {
    assert_eq!(
        star_resolution_json("x y", "x", "z").unwrap_err(),
        "J: parse error: unknown variable 'z'"
    );
    assert_eq!(
        star_resolution_json(" ", "x", "y").unwrap_err(),
        "no variables given"
    );
    assert!(golod_series_json("x y", "x", "x", 3)
        .unwrap_err()
        .contains("not transverse"));
}
