//! Browser bindings. Every call takes strings and returns a JSON string,
//! either the result or `{"error": ...}`.

use std::sync::Arc;

use serde_json::{json, Value};
use skewmc::actions::resolve_actions;
use skewmc::checkers::{mccoy_search_both, SearchOptions, Window};
use skewmc::harness::analyse;
use skewmc::{build_ring, Limits, MonoidKind, OrderedMonoid, RingSpec, SkewSeries};
use wasm_bindgen::prelude::*;

/// Smaller than the native default so a search stays interactive.
const BROWSER_BUDGET: u64 = 1_000_000;

fn limits() -> Limits {
    Limits {
        budget: BROWSER_BUDGET,
        ..Limits::default()
    }
}

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn spec(s: &str) -> Result<RingSpec, String> {
    s.parse().map_err(|e: skewmc::RingError| e.to_string())
}

fn monoid(s: &str) -> Result<OrderedMonoid, String> {
    Ok(OrderedMonoid::new(s.parse::<MonoidKind>().map_err(|e| e.to_string())?))
}

pub fn profile_json(ring: &str) -> Result<Value, String> {
    let (_, a) = analyse(&spec(ring)?, &limits()).map_err(|e| e.to_string())?;
    serde_json::to_value(a.profile()).map_err(|e| e.to_string())
}

pub fn multiply_json(ring: &str, monoid_kind: &str, action: &str, f: &str, g: &str) -> Result<Value, String> {
    let r = Arc::new(build_ring(&spec(ring)?).map_err(|e| e.to_string())?);
    let m = monoid(monoid_kind)?;
    let a = resolve_actions(&r, &m, action, &limits()).map_err(|e| e.to_string())?;
    let a = a.first().ok_or("no action")?;
    let f = SkewSeries::parse(a, f).map_err(|e| e.to_string())?;
    let g = SkewSeries::parse(a, g).map_err(|e| e.to_string())?;
    let fg = f.mul(&g).map_err(|e| e.to_string())?;
    let gf = g.mul(&f).map_err(|e| e.to_string())?;
    Ok(json!({ "f": f.to_string(), "g": g.to_string(), "fg": fg.to_string(), "gf": gf.to_string() }))
}

pub fn mccoy_json(ring: &str, monoid_kind: &str, action: &str, degree: u32) -> Result<Value, String> {
    let r = Arc::new(build_ring(&spec(ring)?).map_err(|e| e.to_string())?);
    let m = monoid(monoid_kind)?;
    let window = Window::degree(&m, degree);
    let mut out = Vec::new();
    for a in resolve_actions(&r, &m, action, &limits()).map_err(|e| e.to_string())? {
        let (rv, lv) = mccoy_search_both(&a, &window, &SearchOptions::default(), &limits()).map_err(|e| e.to_string())?;
        out.push(json!({ "action": a.label(), "compatible": a.is_compatible(), "right": rv, "left": lv }));
    }
    Ok(Value::Array(out))
}

#[wasm_bindgen]
pub fn ring_profile(ring: &str) -> String {
    wrap(profile_json(ring))
}

#[wasm_bindgen]
pub fn multiply_series(ring: &str, monoid: &str, action: &str, f: &str, g: &str) -> String {
    wrap(multiply_json(ring, monoid, action, f, g))
}

#[wasm_bindgen]
pub fn mccoy_search(ring: &str, monoid: &str, action: &str, degree: u32) -> String {
    wrap(mccoy_json(ring, monoid, action, degree))
}
