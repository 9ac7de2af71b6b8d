//! Browser bindings: create a script, apply it, compare readability.

use apievolve_core::readability::score_api_usage;
use apievolve_core::script::{apply_script_with, generate, parse_script, serialize_script, ApplyOptions};
use apievolve_core::{parse, ApiMapping};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn mapping(text: &str) -> Result<ApiMapping, String> {
    ApiMapping::parse(text).map_err(|e| format!("mapping: {e}"))
}

/// Update script text for `example`, or an error message.
pub fn create(example: &str, mapping_text: &str) -> Result<String, String> {
    let mapping = mapping(mapping_text)?;
    let unit = parse(example).map_err(|e| format!("example: {e}"))?;
    let generated = generate(&unit, &mapping).map_err(|e| e.to_string())?;
    Ok(serialize_script(&generated.script))
}

/// JSON `{ "output": text, "report": {...} }`.
pub fn apply(script: &str, target: &str, keep_temps: bool) -> Result<String, String> {
    let script = parse_script(script).map_err(|e| format!("script: {e}"))?;
    let unit = parse(target).map_err(|e| format!("target: {e}"))?;
    let options = ApplyOptions { denormalize: !keep_temps, ..Default::default() };
    let (out, report) = apply_script_with(&script, &unit, &options).map_err(|e| e.to_string())?;
    Ok(json!({ "output": out.text, "report": report }).to_string())
}

/// JSON `{ "before": f64, "after": f64, "delta": f64 }`.
pub fn compare(before: &str, after: &str, mapping_text: &str) -> Result<String, String> {
    let mapping = mapping(mapping_text)?;
    let score = |label: &str, text: &str| -> Result<f64, String> {
        let unit = parse(text).map_err(|e| format!("{label}: {e}"))?;
        score_api_usage(&unit, &mapping).map(|s| s.mean).map_err(|e| format!("{label}: {e}"))
    };
    let (b, a) = (score("before", before)?, score("after", after)?);
    Ok(json!({ "before": b, "after": a, "delta": a - b }).to_string())
}

#[wasm_bindgen]
pub fn create_script(example: &str, mapping: &str) -> Result<String, JsError> {
    create(example, mapping).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn apply_script(script: &str, target: &str, keep_temps: bool) -> Result<String, JsError> {
    apply(script, target, keep_temps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compare_readability(before: &str, after: &str, mapping: &str) -> Result<String, JsError> {
    compare(before, after, mapping).map_err(|e| JsError::new(&e))
}
