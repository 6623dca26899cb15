//! Browser bindings: generate a family member, compute its invariants, replay
//! a built-in certificate. Every entry point returns a JSON string.

use std::str::FromStr;

use gridcomplex::euler::chi_recursive;
use gridcomplex::homology::{check_prime, graph_betti, BettiMethod};
use gridcomplex::morse_ops::{builtin_certificate, builtin_ids, replay, CheckLevel};
use gridcomplex::verify::{expected_shape, CorollaryFamily};
use gridcomplex::{FamilySpec, FamilyTag, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

// Smaller than the CLI default; larger complexes fall back to the Morse route.
const FACE_BUDGET: usize = 200_000;

fn corollary_of(spec: &FamilySpec) -> Option<CorollaryFamily> {
    match (spec.tag, spec.m) {
        (FamilyTag::C, 1) => Some(CorollaryFamily::C1),
        (FamilyTag::C, 2) => Some(CorollaryFamily::C2),
        (FamilyTag::C, 3) => Some(CorollaryFamily::C3),
        (FamilyTag::M, 2) => Some(CorollaryFamily::M2),
        (FamilyTag::M, 3) => Some(CorollaryFamily::M3),
        (FamilyTag::CH, 1) => Some(CorollaryFamily::CH1),
        _ => None,
    }
}

pub fn generate_value(reference: &str) -> Result<Value> {
    let spec = FamilySpec::from_str(reference)?;
    let g = spec.generate()?;
    Ok(json!({
        "name": spec.to_string(),
        "graph": g.to_doc(),
    }))
}

pub fn invariants_value(reference: &str, p: u64) -> Result<Value> {
    check_prime(p)?;
    let spec = FamilySpec::from_str(reference)?;
    let g = spec.generate()?;
    let chi = chi_recursive(&g)?;
    let betti = graph_betti(&g, p, FACE_BUDGET, BettiMethod::Auto)?;
    let expected = match corollary_of(&spec) {
        Some(family) => Some(expected_shape(family, spec.n)?),
        None => None,
    };
    let agrees = match expected {
        Some(shape) => Some(shape.chi() == chi && shape.betti(p)?.same_numbers(&betti)),
        None => None,
    };
    Ok(json!({
        "name": spec.to_string(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "chi": chi.to_string(),
        "p": p,
        "betti": betti.to_string(),
        "expected": expected.map(|s| s.to_string()),
        "agrees": agrees,
    }))
}

pub fn replay_value(id: &str, check: &str) -> Result<Value> {
    let cert = builtin_certificate(id)?;
    let report = replay(&cert, CheckLevel::from_str(check)?)?;
    let mut doc = serde_json::to_value(&report).expect("reports always serialize");
    doc["passed"] = json!(report.passed());
    doc["line"] = json!(report.to_string());
    if let Some(g) = &report.final_graph {
        doc["final_graph"] = json!(g.to_doc());
    }
    Ok(doc)
}

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

/// `reference` uses the CLI syntax: `C:3:4`, `M(2,6)`, `MH1:5`.
#[wasm_bindgen]
pub fn generate(reference: &str) -> std::result::Result<String, JsError> {
    to_js(generate_value(reference))
}

#[wasm_bindgen]
pub fn invariants(reference: &str, p: u32) -> std::result::Result<String, JsError> {
    to_js(invariants_value(reference, p as u64))
}

#[wasm_bindgen]
pub fn replay_builtin(id: &str, check: &str) -> std::result::Result<String, JsError> {
    to_js(replay_value(id, check))
}

#[wasm_bindgen]
pub fn certificate_ids() -> String {
    json!(builtin_ids()).to_string()
}
