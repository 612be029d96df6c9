//! WebAssembly bindings for the static demo page in `www/`. Each export has
//! a plain Rust twin so the logic is testable off the browser.

use serde_json::json;
use wasm_bindgen::prelude::*;

use toratlas::catalog;
use toratlas::classify::DecorationKind;
use toratlas::enumerate::{enumerate_classes, minimum_genus, EnumerationReport, SearchOptions};
use toratlas::graph::Graph;
use toratlas::render::map_svg;

/// Larger spaces would freeze the page.
pub const WEB_BUDGET: u128 = 200_000;

fn options() -> SearchOptions {
    SearchOptions::default().with_budget(WEB_BUDGET)
}

fn report(name: &str, genus: usize, decoration: &str) -> Result<EnumerationReport, String> {
    let kind: DecorationKind = decoration.parse().map_err(|e: toratlas::Error| e.to_string())?;
    let g = catalog::builtin(name).map_err(|e| e.to_string())?;
    enumerate_classes(&g, name, genus, kind, &options()).map_err(|e| e.to_string())
}

/// Enumeration report of a catalog graph, as JSON.
pub fn classify_builtin(name: &str, genus: usize, decoration: &str) -> Result<String, String> {
    serde_json::to_string(&report(name, genus, decoration)?).map_err(|e| e.to_string())
}

/// Polygon decomposition of class `index` (0-based) as SVG.
pub fn draw_class(name: &str, genus: usize, decoration: &str, index: usize) -> Result<String, String> {
    let r = report(name, genus, decoration)?;
    let c = r.classes.get(index).ok_or_else(|| format!("{name} has {} classes at genus {genus}", r.classes.len()))?;
    Ok(map_svg(&c.representative, &format!("{name} class {} faces {:?}", index + 1, c.face_signature)))
}

/// Genus of a graph in text format, with per-component genera, as JSON.
pub fn genus_text(text: &str) -> Result<String, String> {
    let g = Graph::parse_text(text).map_err(|e| e.to_string())?;
    let w = minimum_genus(&g, WEB_BUDGET).map_err(|e| e.to_string())?;
    let components: Vec<usize> = w.components.iter().map(|(_, k)| *k).collect();
    Ok(json!({ "genus": w.genus, "components": components, "witness": serde_json::from_str::<serde_json::Value>(&w.map.to_json()).unwrap() }).to_string())
}

#[wasm_bindgen]
pub fn catalog_names() -> Vec<String> {
    catalog::NAMES.iter().map(|s| s.to_string()).collect()
}

#[wasm_bindgen]
pub fn classify(name: &str, genus: usize, decoration: &str) -> Result<String, JsError> {
    classify_builtin(name, genus, decoration).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn class_svg(name: &str, genus: usize, decoration: &str, index: usize) -> Result<String, JsError> {
    draw_class(name, genus, decoration, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn genus(text: &str) -> Result<String, JsError> {
    genus_text(text).map_err(|e| JsError::new(&e))
}
