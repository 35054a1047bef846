use std::process::{Command, Output};

use serde_json::Value;

fn transpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transpoly"))
        .args(args)
        .output()
        .expect("spawn transpoly")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&raw).unwrap()
}

fn json_ok(args: &[&str], schema_name: &str) -> Value {
    let out = transpoly(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = schema(schema_name);
    assert!(s.is_valid(&v), "{args:?} does not match {schema_name}");
    v
}

#[test]
fn vertices_of_3x3() {
    let v = json_ok(
        &[
            "vertices",
            "--classical",
            "3,3",
            "--u",
            "5,5,1",
            "--v",
            "2,7,2",
        ],
        "vertices",
    );
    assert_eq!(v.as_array().unwrap().len(), 12);
    let text = transpoly(&[
        "vertices",
        "--classical",
        "3,3",
        "--u",
        "5,5,1",
        "--v",
        "2,7,2",
        "--format",
        "text",
    ]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 12);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "graph", "--axial", "2,2,2", "--u", "3,4", "--v", "2,5", "--w", "4,3",
    ];
    let a = transpoly(&args);
    let b = transpoly(&args);
    assert_eq!(a.stdout, b.stdout);
    json_ok(&args, "graph");
}

#[test]
fn diameter_and_spec_file() {
    let dir = std::env::temp_dir().join(format!("transpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = serde_json::json!({"kind": "classical", "sizes": [3, 3], "marginals": [["5", "5", "1"], ["2", "7", "2"]]});
    assert!(schema("spec").is_valid(&spec));
    let path = dir.join("spec.json");
    std::fs::write(&path, spec.to_string()).unwrap();
    let v = json_ok(&["diameter", "--spec", path.to_str().unwrap()], "diameter");
    assert_eq!(v["vertices"], 12);
    assert_eq!(v["dimension"], 4);
    let out = dir.join("out.json");
    let o = transpoly(&[
        "diameter",
        "--spec",
        path.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, v);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn catalogue_2x3_csv() {
    let out = transpoly(&["catalogue", "--classical", "2,3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 19);
    assert!(text.starts_with("chamber_id,f0,facets,diameter,marginals_json\n"));
    let v = json_ok(&["catalogue", "--classical", "2,3"], "catalogue");
    assert_eq!(v["chambers"], 18);
    let c = json_ok(&["chambers", "--classical", "2,3"], "chambers");
    assert_eq!(
        c["orbits"].as_u64().unwrap() as usize,
        c["representatives"].as_array().unwrap().len()
    );
}

#[test]
fn q4_and_birkhoff() {
    let v = json_ok(&["verify-q4"], "q4");
    assert_eq!(v["distance_abcd_efgh"], 5);
    assert_eq!(v["facets"], 27);
    let out = transpoly(&["verify-birkhoff"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["regularity"]["decision"], "non_regular");
}

#[test]
fn paths() {
    let v = json_ok(
        &[
            "axial-path",
            "--axial",
            "2,2,2",
            "--u",
            "3,4",
            "--v",
            "2,5",
            "--w",
            "4,3",
            "--from",
            "3",
        ],
        "path",
    );
    assert!(v["length"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    let v = json_ok(
        &[
            "px2-path",
            "--classical",
            "3,2",
            "--u",
            "1,2,4",
            "--v",
            "5/2,9/2",
        ],
        "path",
    );
    assert!(v["length"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    let v = json_ok(
        &[
            "flow-path",
            "--n",
            "4",
            "--k",
            "2",
            "--demands=-7,1,2,4",
            "--from",
            "2",
        ],
        "path",
    );
    assert!(v["length"].as_u64().unwrap() < 4);
}

#[test]
fn nwcorner_and_isomorphism() {
    let v = json_ok(&["nwcorner", "--u", "3,4", "--v", "2,5"], "table");
    assert_eq!(v["values"], serde_json::json!(["2", "1", "0", "4"]));
    let out = transpoly(&[
        "isomorph-22n",
        "--classical",
        "3,2",
        "--u",
        "1,2,4",
        "--v",
        "5/2,9/2",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["round_trip_identity"], true);
    assert_eq!(v["edges_preserved"], true);
    let v = json_ok(&["hirsch-sharp", "--p", "3", "--q", "5"], "hirsch");
    assert_eq!(v["disjoint"], true);
}

#[test]
fn exit_codes() {
    let err = schema("error");
    let infeasible = transpoly(&["vertices", "--classical", "2,2", "--u", "1,1", "--v", "1,2"]);
    assert_eq!(infeasible.status.code(), Some(1));
    let rec: Value = serde_json::from_slice(&infeasible.stderr).unwrap();
    assert!(err.is_valid(&rec));
    assert_eq!(rec["error"], "infeasible");
    let guarded = transpoly(&[
        "vertices", "--axial", "3,3,4", "--u", "4,4,4", "--v", "4,4,4", "--w", "3,3,3,3",
    ]);
    assert_eq!(guarded.status.code(), Some(1));
    let rec: Value = serde_json::from_slice(&guarded.stderr).unwrap();
    assert_eq!(rec["error"], "guard");
    assert_eq!(transpoly(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        transpoly(&["vertices", "--classical", "2,2", "--u", "1,x", "--v", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        transpoly(&["vertices", "--classical", "2,2"]).status.code(),
        Some(2)
    );
    let bad = transpoly(&["vertices", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(bad.status.code(), Some(1));
    let rec: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert!(err.is_valid(&rec));
}
