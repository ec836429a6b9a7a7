//! Browser bindings. Each entry point returns a JSON string; errors come
//! back as `{"error": "..."}` so the page never has to catch exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use zetalab::bbp::bbp_zeta3;
use zetalab::identities::verify_identity;
use zetalab::series::{eval_method, MethodId, SeriesResult};

/// Highest order the page may request for one curve.
pub const MAX_ORDER: usize = 24;
const MIN_BITS: u32 = 64;
const MAX_BITS: u32 = 1024;

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

#[derive(Serialize)]
pub struct CurvePoint {
    pub order: usize,
    pub log10_error: f64,
    pub log10_estimate: f64,
}

#[derive(Serialize)]
pub struct Curve {
    pub method: String,
    pub points: Vec<CurvePoint>,
}

fn to_json<T: Serialize>(r: zetalab::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::to_string(&ErrorBody { error: e.to_string() }).expect("serializable"),
    }
}

fn clamp_bits(bits: u32) -> u32 {
    bits.clamp(MIN_BITS, MAX_BITS)
}

fn run(method: &str, order: usize, bits: u32) -> zetalab::Result<SeriesResult> {
    if order > MAX_ORDER {
        return Err(zetalab::Error::Domain(format!("order above {MAX_ORDER}")));
    }
    if method.eq_ignore_ascii_case("BBP") {
        bbp_zeta3(order.max(1) - 1, bits)
    } else {
        eval_method(MethodId::parse(method)?, order, bits)
    }
}

/// One evaluation, as the CLI's JSON report with the term trace.
pub fn compute_json(method: &str, order: usize, bits: u32) -> String {
    to_json(run(method, order, clamp_bits(bits)).map(|r| r.report(true)))
}

/// Error against ζ(3) for orders `1..=max_order`, one curve per method in
/// the comma-separated list.
pub fn curves_json(methods: &str, max_order: usize, bits: u32) -> String {
    let bits = clamp_bits(bits);
    let curves = methods
        .split(',')
        .map(str::trim)
        .filter(|m| !m.is_empty())
        .map(|m| {
            let points = (1..=max_order.min(MAX_ORDER))
                .map(|n| {
                    let r = run(m, n, bits)?;
                    Ok(CurvePoint {
                        order: n,
                        log10_error: r.abs_error.log10_abs(),
                        log10_estimate: r.error_estimate.log10_abs(),
                    })
                })
                .collect::<zetalab::Result<Vec<_>>>()?;
            Ok(Curve { method: m.to_ascii_uppercase(), points })
        })
        .collect::<zetalab::Result<Vec<_>>>();
    to_json(curves)
}

pub fn verify_json(id: &str, bits: u32) -> String {
    to_json(verify_identity(id.trim(), clamp_bits(bits)))
}

pub fn methods_json() -> String {
    let mut names: Vec<&str> = MethodId::ALL.iter().map(|m| m.name()).collect();
    names.push("BBP");
    serde_json::to_string(&names).expect("serializable")
}

#[wasm_bindgen]
pub fn compute(method: &str, order: usize, bits: u32) -> String {
    compute_json(method, order, bits)
}

#[wasm_bindgen]
pub fn curves(methods: &str, max_order: usize, bits: u32) -> String {
    curves_json(methods, max_order, bits)
}

#[wasm_bindgen]
pub fn verify(id: &str, bits: u32) -> String {
    verify_json(id, bits)
}

#[wasm_bindgen]
pub fn methods() -> String {
    methods_json()
}
