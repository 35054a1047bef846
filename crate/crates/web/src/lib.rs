//! Browser bindings. Each export takes plain strings and returns JSON or CSV text.

use serde_json::json;
use wasm_bindgen::prelude::*;

use transpoly::chamber_enum::{catalogue_with, MAX_CHAMBERS};
use transpoly::exact_core::rational::parse_qvec;
use transpoly::transport_model::{dimension, Kind, TransportSpec};
use transpoly::vertex_enum::{analyze_with, diameter, northwest_corner, Limits};

/// Chamber cap for the page.
const WEB_CHAMBERS: usize = 2_000;

fn sizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad size list {s}")))
        .collect()
}

fn spec_from(kind: &str, u: &str, v: &str, w: &str) -> Result<TransportSpec, String> {
    let q = |s: &str| parse_qvec(s).map_err(|e| e.to_string());
    match Kind::parse(kind).map_err(|e| e.to_string())? {
        Kind::Classical => TransportSpec::classical(q(u)?, q(v)?),
        Kind::Axial3 => TransportSpec::axial(q(u)?, q(v)?, q(w)?),
        Kind::Planar3 => return Err("planar specs are not offered here".into()),
    }
    .map_err(|e| e.to_string())
}

/// Vertices, adjacency and diameter as JSON.
pub fn polytope_json(kind: &str, u: &str, v: &str, w: &str) -> Result<String, String> {
    let spec = spec_from(kind, u, v, w)?;
    let a = analyze_with(&spec, &Limits::default()).map_err(|e| e.to_string())?;
    let out = json!({
        "sizes": spec.sizes(),
        "dimension": dimension(&spec).map_err(|e| e.to_string())?,
        "vertices": a.graph.vertices.iter().map(|t| t.to_strings()).collect::<Vec<_>>(),
        "adjacency": a.graph.adjacency,
        "edges": a.graph.edge_count(),
        "diameter": diameter(&a.graph).map_err(|e| e.to_string())?,
        "nondegenerate": a.nondegenerate,
    });
    Ok(out.to_string())
}

/// Northwest-corner table; orders are 1-based and may be empty.
pub fn nwcorner_json(u: &str, v: &str, sigma: &str, tau: &str) -> Result<String, String> {
    let q = |s: &str| parse_qvec(s).map_err(|e| e.to_string());
    let (u, v) = (q(u)?, q(v)?);
    let order = |s: &str, n: usize| -> Result<Vec<usize>, String> {
        if s.trim().is_empty() {
            return Ok((0..n).collect());
        }
        sizes(s)?
            .into_iter()
            .map(|i| {
                i.checked_sub(1)
                    .ok_or_else(|| "orders are 1-based".to_string())
            })
            .collect()
    };
    let t = northwest_corner(&u, &v, &order(sigma, u.len())?, &order(tau, v.len())?)
        .map_err(|e| e.to_string())?;
    Ok(json!({"sizes": t.sizes, "values": t.to_strings()}).to_string())
}

/// Chamber catalogue as CSV.
pub fn catalogue_csv(kind: &str, dims: &str) -> Result<String, String> {
    let kind = Kind::parse(kind).map_err(|e| e.to_string())?;
    let c = catalogue_with(kind, &sizes(dims)?, WEB_CHAMBERS.min(MAX_CHAMBERS))
        .map_err(|e| e.to_string())?;
    Ok(c.to_csv())
}

#[wasm_bindgen]
pub fn polytope(kind: &str, u: &str, v: &str, w: &str) -> Result<String, JsValue> {
    polytope_json(kind, u, v, w).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn nwcorner(u: &str, v: &str, sigma: &str, tau: &str) -> Result<String, JsValue> {
    nwcorner_json(u, v, sigma, tau).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalogue(kind: &str, dims: &str) -> Result<String, JsValue> {
    catalogue_csv(kind, dims).map_err(|e| JsValue::from_str(&e))
}
