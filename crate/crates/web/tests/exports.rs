use serde_json::Value;
use tropcount_web::{count_json, lift_json, quad_json};

#[test]
fn conic_count() {
    let v: Value =
        serde_json::from_str(&count_json(r#"{"vertices": [[0,0],[2,0],[0,2]]}"#, "nodal", 3).unwrap())
            .unwrap();
    assert_eq!(v["total"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert!(v["curves"][0]["svg"].as_str().unwrap().starts_with("<svg"));
}

#[test]
fn bad_inputs_are_errors() {
    assert!(count_json("{", "nodal", 1).is_err());
    assert!(count_json(r#"{"vertices": [[0,0],[2,0],[0,2]]}"#, "cusp", 1).is_err());
    assert!(count_json(r#"{"vertices": [[0,0],[2,0],[0,2]]}"#, "other", 1).is_err());
    assert!(quad_json(2, 1, 1, 1, 1).is_err());
}

#[test]
fn quadrilateral_explorer() {
    let v: Value = serde_json::from_str(&quad_json(3, 1, 1, 2, 1).unwrap()).unwrap();
    assert_eq!(v["eta"], "1/3");
    assert_eq!(v["xi"], "5/9");
    assert_eq!(v["adjacent"], v["oracle_adjacent"]);
    assert_eq!(v["opposite"], v["oracle_opposite"]);
}

#[test]
fn lift_viewer_is_deterministic() {
    let poly = r#"{"vertices": [[0,0],[3,0],[0,3]]}"#;
    let a = lift_json(poly, 9, 6).unwrap();
    assert_eq!(a, lift_json(poly, 9, 6).unwrap());
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["heights"].as_array().unwrap().len(), 10);
    assert!(v["cells"].as_u64().unwrap() >= 1);
}
