//! Browser bindings for the `izlab` demo page.
//!
//! Every export takes and returns strings. The plain functions in this
//! module do the work and are tested natively; the `#[wasm_bindgen]`
//! wrappers only convert errors into JavaScript exceptions.

use izlab::algebra::defining_identities;
use izlab::search::{enumerate, SearchConfig};
use izlab::{classify, parse_identity, FiniteAlgebra, Variety};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest size the demo page will enumerate.
pub const DEMO_MAX_SIZE: usize = 4;

fn load(src: &str) -> Result<FiniteAlgebra, String> {
    FiniteAlgebra::parse(src).map_err(|e| e.to_string())
}

/// Classification report plus the derived meet and join tables.
pub fn analyze_algebra(src: &str) -> Result<String, String> {
    let alg = load(src)?;
    let defining: Vec<Value> = defining_identities()
        .iter()
        .map(|id| {
            json!({
                "identity": id.to_string(),
                "witness": alg.satisfies(id).into_witness(),
            })
        })
        .collect();
    let out = json!({
        "algebra": alg,
        "prime": alg.elements().map(|a| alg.prime(a)).collect::<Vec<_>>(),
        "derived": alg.derive_bimagma(),
        "defining": defining,
        "report": serde_json::from_str::<Value>(&classify(&alg).to_json())
            .expect("report is valid JSON"),
    });
    Ok(out.to_string())
}

/// `{"holds": bool, "witness": ...}` for one identity.
pub fn check_identity(src: &str, identity: &str) -> Result<String, String> {
    let alg = load(src)?;
    let id = parse_identity(identity).map_err(|e| e.to_string())?;
    let witness = alg.satisfies(&id).into_witness();
    Ok(json!({
        "identity": id.to_string(),
        "holds": witness.is_none(),
        "witness": witness,
    })
    .to_string())
}

/// One representative per isomorphism class.
pub fn enumerate_variety(size: usize, variety: &str) -> Result<String, String> {
    if size == 0 || size > DEMO_MAX_SIZE {
        return Err(format!("size must be between 1 and {DEMO_MAX_SIZE}"));
    }
    let variety: Variety = variety.parse()?;
    let e = enumerate(&SearchConfig::new(size, variety)).map_err(|e| e.to_string())?;
    Ok(json!({
        "variety": variety.name(),
        "size": size,
        "complete": e.complete,
        "algebras": e.algebras,
    })
    .to_string())
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(src: &str) -> Result<String, JsError> {
    analyze_algebra(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = check)]
pub fn check_js(src: &str, identity: &str) -> Result<String, JsError> {
    check_identity(src, identity).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = enumerate)]
pub fn enumerate_js(size: usize, variety: &str) -> Result<String, JsError> {
    enumerate_variety(size, variety).map_err(|e| JsError::new(&e))
}
