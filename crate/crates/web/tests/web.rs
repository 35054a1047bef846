use serde_json::Value;
use transpoly_web::{catalogue_csv, nwcorner_json, polytope_json};

#[test]
fn polytope_3x3() {
    let v: Value =
        serde_json::from_str(&polytope_json("classical", "5,5,1", "2,7,2", "").unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(v["dimension"], 4);
    let a: Value =
        serde_json::from_str(&polytope_json("axial", "3,4", "2,5", "4,3").unwrap()).unwrap();
    assert_eq!(a["sizes"], serde_json::json!([2, 2, 2]));
}

#[test]
fn nwcorner_orders() {
    let v: Value = serde_json::from_str(&nwcorner_json("3,4", "2,5", "", "").unwrap()).unwrap();
    assert_eq!(v["values"], serde_json::json!(["2", "1", "0", "4"]));
    let r: Value = serde_json::from_str(&nwcorner_json("3,4", "2,5", "2,1", "").unwrap()).unwrap();
    assert_eq!(r["values"], serde_json::json!(["0", "3", "2", "2"]));
    assert!(nwcorner_json("3,4", "2,5", "0,1", "").is_err());
}

#[test]
fn catalogue_rows() {
    assert_eq!(
        catalogue_csv("classical", "2,3").unwrap().lines().count(),
        19
    );
    assert!(catalogue_csv("classical", "2,x").is_err());
    assert!(polytope_json("classical", "1,1", "1,2", "").is_err());
}
