//! Thin wasm-bindgen layer over eix-core for the browser demo in www/.
//! All logic lives in plain functions with string errors so it can be
//! unit-tested on the host; the exported wrappers only translate errors.

use eix_core::{
    bias_corrected, confidence_interval, estimate, simulate, theta_true, variance_estimate,
    EstimatorVariant, ModelKind, ModelSpec, Series,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
struct CurvePoint {
    b: usize,
    theta: f64,
    theta_bc: f64,
    lo: f64,
    hi: f64,
}

fn parse_model(model: &str, param: f64) -> Result<ModelKind, String> {
    match model {
        "armax" => Ok(ModelKind::Armax { alpha: param }),
        "sq-arch" => Ok(ModelKind::SqArch { lambda: param }),
        "arch" => Ok(ModelKind::Arch { lambda: param }),
        "clayton" => Ok(ModelKind::Clayton { vartheta: param }),
        other => Err(format!("unknown model '{other}'")),
    }
}

fn simulate_impl(model: &str, param: f64, n: usize, seed: u64) -> Result<Vec<f64>, String> {
    let kind = parse_model(model, param)?;
    let spec = ModelSpec::new(kind, n, seed).map_err(|e| e.to_string())?;
    Ok(simulate(&spec).map_err(|e| e.to_string())?.values().to_vec())
}

fn curve_impl(
    values: &[f64],
    b_min: usize,
    b_max: usize,
    step: usize,
    level: f64,
) -> Result<String, String> {
    if step == 0 || b_min > b_max {
        return Err(format!("bad block range {b_min}..{b_max} step {step}"));
    }
    let series = Series::new(values.to_vec()).map_err(|e| e.to_string())?;
    let max_b = series.len() / 2;
    let variant = EstimatorVariant::B_SL;
    let mut points = Vec::new();
    for b in (b_min..=b_max).step_by(step) {
        if b < 2 || b > max_b {
            continue;
        }
        let report = estimate(&series, b, variant).map_err(|e| e.to_string())?;
        let var = variance_estimate(&series, b).map_err(|e| e.to_string())?;
        let theta_bc =
            bias_corrected(report.theta_raw, var.sigma2(variant.mode), report.k).clamp(0.0, 1.0);
        let ci = confidence_interval(theta_bc, var.tau2_floored(variant.mode), report.k, level)
            .map_err(|e| e.to_string())?
            .clip_to_unit();
        points.push(CurvePoint { b, theta: report.theta, theta_bc, lo: ci.lo, hi: ci.hi });
    }
    if points.is_empty() {
        return Err(format!("no valid block lengths in {b_min}..{b_max} for n={}", series.len()));
    }
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

fn theta_impl(model: &str, param: f64) -> Result<f64, String> {
    theta_true(&parse_model(model, param)?).map_err(|e| e.to_string())
}

/// Simulates a series; models are "armax", "sq-arch", "arch", "clayton",
/// each with its single parameter.
#[wasm_bindgen]
pub fn simulate_series(model: &str, param: f64, n: usize, seed: u64) -> Result<Vec<f64>, JsValue> {
    simulate_impl(model, param, n, seed).map_err(|e| JsValue::from_str(&e))
}

/// Sliding-blocks estimate curve over a block-length grid, as a JSON array
/// of {b, theta, theta_bc, lo, hi}.
#[wasm_bindgen]
pub fn estimate_curve(
    values: &[f64],
    b_min: usize,
    b_max: usize,
    step: usize,
    level: f64,
) -> Result<String, JsValue> {
    curve_impl(values, b_min, b_max, step, level).map_err(|e| JsValue::from_str(&e))
}

/// True extremal index of a model, for overlaying on the estimate curve.
#[wasm_bindgen]
pub fn true_theta(model: &str, param: f64) -> Result<f64, JsValue> {
    theta_impl(model, param).map_err(|e| JsValue::from_str(&e))
}
